#include <doctest.h>

#include "rfblt/series.hpp"
#include "test_support.hpp"

using namespace rfblt;
using namespace rfblt::series;
using rfblt::testing::error_code;

namespace {
std::vector<double> vec(std::span<const double> s) { return {s.begin(), s.end()}; }
}  // namespace

TEST_CASE("time series validates its invariants") {
  CHECK(error_code([] { TimeSeries({0.0, 1.0}, {1.0}); }) == ErrorCode::ShapeError);
  CHECK(error_code([] { TimeSeries({0.0}, {1.0}); }) == ErrorCode::InsufficientData);
  CHECK(error_code([] { TimeSeries({0.0, 0.0}, {1.0, 2.0}); }) == ErrorCode::InvalidArgument);
  CHECK(error_code([] { TimeSeries({0.0, 1.0}, {1.0, NAN}); }) == ErrorCode::InvalidArgument);
  const auto s = TimeSeries::uniform({1, 2, 3, 4}, 10.0, 0.5);
  CHECK(s.time(3) == doctest::Approx(11.5));
  CHECK(s.mean_step() == doctest::Approx(0.5));
  CHECK(s.prefix(2).size() == 2);
}

TEST_CASE("forward difference") {
  CHECK(forward_difference(TimeSeries::uniform({1, 3, 6})) == std::vector<double>{2, 3});
  CHECK(forward_difference(TimeSeries::uniform({5, 5, 5})) == std::vector<double>{0, 0});
  CHECK(forward_difference(TimeSeries({0.0, 0.5}, {0.0, 2.0})) == std::vector<double>{4});
}

TEST_CASE("euler integration inverts differencing on a non-uniform grid") {
  const TimeSeries s({0.0, 0.3, 1.0, 2.5}, {1.0, -2.0, 4.0, 0.5});
  const auto rebuilt = euler_integrate(1.0, forward_difference(s), s.times());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(rebuilt[i] == doctest::Approx(s.value(i)));
}

TEST_CASE("left moving average") {
  CHECK(left_moving_average(std::vector<double>{2, 4, 6}, 2) == std::vector<double>{2, 3, 5});
  const std::vector<double> x{0.5, -1.0, 7.25};
  CHECK(left_moving_average(x, 1) == x);
  const auto y = left_moving_average(std::vector<double>{1, 1, 1, 10}, 4);
  CHECK(y[3] == doctest::Approx(3.25));
  CHECK(y[0] == 1.0);
  CHECK(error_code([&] { left_moving_average(x, 0); }) == ErrorCode::InvalidWindow);
  CHECK(error_code([&] { left_moving_average(x, 4); }) == ErrorCode::InvalidWindow);
}

TEST_CASE("derivative series and smoothing error variance") {
  SUBCASE("pass-through has no smoothing error") {
    const auto d = build_derivative_series(TimeSeries::uniform({0, 2, 1, 5}), Smoothing::pass_through());
    CHECK(d.smoothed == d.raw);
    CHECK(d.sigma_delta_sq == 0.0);
    for (double r : d.residuals) CHECK(r == 0.0);
  }
  SUBCASE("window one is the identity") {
    const auto d = build_derivative_series(TimeSeries::uniform({0, 1, 2, 3}), Smoothing::moving_average(1));
    CHECK(d.sigma_delta_sq == 0.0);
    for (double r : d.residuals) CHECK(r == 0.0);
  }
  SUBCASE("window two by hand") {
    const auto d = build_derivative_series(TimeSeries::uniform({0, 1, 3, 6}), Smoothing::moving_average(2));
    CHECK(d.raw == std::vector<double>{1, 2, 3});
    CHECK(d.smoothed == std::vector<double>{1, 1.5, 2.5});
    CHECK(d.sigma_delta_sq == doctest::Approx(0.25));
    for (std::size_t k = 0; k < d.raw.size(); ++k) CHECK(d.residuals[k] == d.raw[k] - d.smoothed[k]);
  }
  SUBCASE("custom smoother is plugged in") {
    const auto zero = Smoothing::custom("zero", [](std::span<const double> x) {
      return std::vector<double>(x.size(), 0.0);
    });
    const auto d = build_derivative_series(TimeSeries::uniform({0, 1, 3, 6}), zero);
    CHECK(d.sigma_delta_sq == doctest::Approx((1.0 + 4.0 + 9.0) / 2.0));
  }
  SUBCASE("two points cannot estimate the smoothing error") {
    CHECK(error_code([] {
            build_derivative_series(TimeSeries::uniform({0, 1}), Smoothing::moving_average(1));
          }) == ErrorCode::InsufficientData);
  }
}

TEST_CASE("delay embedding") {
  const auto s = TimeSeries::uniform({1, 2, 3, 4, 5});
  SUBCASE("next-value targets") {
    const auto e = build_embedding(s, nullptr, 2, TargetMode::NextValue);
    Eigen::MatrixXd expected(3, 2);
    expected << 1, 2, 2, 3, 3, 4;
    CHECK(e.design == expected);
    CHECK(rfblt::testing::to_vector(e.targets) == std::vector<double>{3, 4, 5});
  }
  SUBCASE("derivative targets") {
    const auto d = build_derivative_series(s, Smoothing::pass_through());
    const auto e = build_embedding(s, &d, 2, TargetMode::Derivative);
    CHECK(rfblt::testing::to_vector(e.targets) == std::vector<double>{1, 1, 1});
    CHECK(e.window_end == std::vector<std::size_t>{1, 2, 3});
  }
  SUBCASE("shape arithmetic") {
    std::vector<double> v(180);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(0.1 * static_cast<double>(i));
    const auto e = build_embedding(TimeSeries::uniform(v), nullptr, 9, TargetMode::NextValue);
    CHECK(e.design.rows() == 171);
    CHECK(e.design.cols() == 9);
  }
  SUBCASE("errors") {
    CHECK(error_code([&] { build_embedding(s, nullptr, 5, TargetMode::NextValue); }) ==
          ErrorCode::EmbeddingTooLarge);
    CHECK(error_code([&] { build_embedding(s, nullptr, 0, TargetMode::NextValue); }) ==
          ErrorCode::InvalidArgument);
    CHECK(error_code([&] { build_embedding(s, nullptr, 2, TargetMode::Derivative); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("min-max scaler") {
  const std::vector<double> train{0, 5, 10};
  const auto sc = fit_scaler(train);
  CHECK(series::apply(sc, train) == std::vector<double>{0, 0.5, 1});
  CHECK(sc.invert(sc.apply(7.3)) == doctest::Approx(7.3));
  CHECK(sc.apply(12.0) == doctest::Approx(1.2));
  CHECK(vec(series::apply(sc, TimeSeries::uniform({10, 0})).values()) == std::vector<double>{1, 0});
  CHECK(error_code([] { fit_scaler(std::vector<double>{3, 3, 3}); }) == ErrorCode::DegenerateScale);
}
