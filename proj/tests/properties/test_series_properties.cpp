#include <doctest.h>

#include <algorithm>

#include "rfblt/series.hpp"
#include "test_support.hpp"

using namespace rfblt;
using namespace rfblt::series;
using rfblt::testing::CaseRng;
using rfblt::testing::kPropertyCases;

namespace {

TimeSeries random_series(CaseRng& rng, std::size_t n) {
  std::vector<double> t(n), v = rng.vector(n, -100.0, 100.0);
  double now = rng.uniform(-10.0, 10.0);
  for (auto& x : t) {
    x = now;
    now += rng.uniform(0.01, 3.0);
  }
  return TimeSeries(t, v);
}

}  // namespace

TEST_CASE("property: euler integration reconstructs the series") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(static_cast<std::uint64_t>(c));
    const auto s = random_series(rng, rng.integer(2, 300));
    const auto rebuilt = euler_integrate(s.value(0), forward_difference(s), s.times());
    double scale = 0.0;
    for (double v : s.values()) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(std::abs(rebuilt[i] - s.value(i)) <= 1e-10 * scale);
  }
}

TEST_CASE("property: moving average identity and range") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(1000 + static_cast<std::uint64_t>(c));
    const auto x = rng.vector(rng.integer(1, 200), -1e3, 1e3);
    REQUIRE(left_moving_average(x, 1) == x);
    const auto y = left_moving_average(x, rng.integer(1, x.size()));
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    for (double v : y) {
      REQUIRE(v >= *lo - 1e-9);
      REQUIRE(v <= *hi + 1e-9);
    }
  }
}

TEST_CASE("property: derivative series bookkeeping") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(2000 + static_cast<std::uint64_t>(c));
    const auto s = random_series(rng, rng.integer(3, 100));
    const auto d = build_derivative_series(s, Smoothing::moving_average(rng.integer(1, s.size() - 1)));
    REQUIRE(d.raw.size() == s.size() - 1);
    REQUIRE(d.smoothed.size() == d.raw.size());
    REQUIRE(d.residuals.size() == d.raw.size());
    for (std::size_t k = 0; k < d.raw.size(); ++k) REQUIRE(d.residuals[k] == d.raw[k] - d.smoothed[k]);
    REQUIRE(d.sigma_delta_sq >= 0.0);
  }
}

TEST_CASE("property: embedding rows and targets are aligned") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(3000 + static_cast<std::uint64_t>(c));
    const auto s = random_series(rng, rng.integer(3, 120));
    const std::size_t m = rng.integer(1, s.size() - 1);
    const auto d = build_derivative_series(s, Smoothing::moving_average(rng.integer(1, s.size() - 1)));
    const auto deriv = build_embedding(s, &d, m, TargetMode::Derivative);
    const auto next = build_embedding(s, nullptr, m, TargetMode::NextValue);
    REQUIRE(static_cast<std::size_t>(deriv.design.rows()) == s.size() - m);
    REQUIRE(static_cast<std::size_t>(deriv.design.cols()) == m);
    for (Eigen::Index i = 0; i < deriv.design.rows(); ++i) {
      const auto row = static_cast<std::size_t>(i);
      for (std::size_t j = 0; j < m; ++j) REQUIRE(deriv.design(i, static_cast<Eigen::Index>(j)) == s.value(row + j));
      const std::size_t end = row + m - 1;
      REQUIRE(deriv.window_end[row] == end);
      REQUIRE(deriv.targets(i) == d.smoothed[end]);
      REQUIRE(next.targets(i) == s.value(end + 1));
    }
  }
}

TEST_CASE("property: scaler roundtrip") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(4000 + static_cast<std::uint64_t>(c));
    const double center = rng.uniform(-50.0, 50.0);
    const double spread = rng.uniform(0.1, 20.0);
    const auto train = rng.vector(rng.integer(2, 50), center - spread, center + spread);
    const auto sc = fit_scaler(train);
    const auto scaled = series::apply(sc, train);
    for (double v : scaled) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
    const auto x = rng.vector(1000, center - 3 * spread, center + 3 * spread);
    const auto back = series::invert(sc, series::apply(sc, x));
    for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(std::abs(back[i] - x[i]) <= 1e-12);
  }
}
