#include <doctest.h>

#include "rfblt/sueir.hpp"
#include "test_support.hpp"

using namespace rfblt;
using namespace rfblt::sim;
using rfblt::testing::CaseRng;
using rfblt::testing::kPropertyCases;

namespace {

SueirParams random_params(CaseRng& rng) {
  SueirParams p;
  p.beta = rng.uniform(0.12, 0.4);
  p.sigma = rng.uniform(0.1, 0.5);
  p.gamma = rng.uniform(0.04, 0.15);
  p.mu = rng.uniform(0.3, 1.0);
  p.S0 = std::exp(rng.uniform(std::log(1e3), std::log(1e7)));
  p.E0 = rng.uniform(0, 20);
  p.I0 = rng.uniform(1, 50);
  p.R0 = rng.uniform(0, 100);
  return p;
}

}  // namespace

TEST_CASE("property: compartments stay non-negative and the total never grows") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(15000 + static_cast<std::uint64_t>(c));
    const auto run = integrate_sueir(random_params(rng));
    for (std::size_t i = 0; i < run.states.size(); ++i) {
      const auto& x = run.states[i];
      REQUIRE(x.S >= 0.0);
      REQUIRE(x.E >= 0.0);
      REQUIRE(x.I >= 0.0);
      REQUIRE(x.R >= 0.0);
      if (i > 0) REQUIRE(x.total() <= run.states[i - 1].total() * (1 + 1e-14));
    }
  }
}

TEST_CASE("property: halving the RK4 step barely moves I(t)") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(16000 + static_cast<std::uint64_t>(c));
    auto p = random_params(rng);
    const auto coarse = integrate_sueir(p);
    p.step /= 2;
    const auto fine = integrate_sueir(p);
    REQUIRE(coarse.states.size() == fine.states.size());
    for (std::size_t i = 0; i < coarse.states.size(); ++i) {
      const double a = coarse.states[i].I, b = fine.states[i].I;
      REQUIRE(std::abs(a - b) <= 1e-8 * std::abs(b));
    }
  }
}

TEST_CASE("property: full discovery conserves the population") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(17000 + static_cast<std::uint64_t>(c));
    auto p = random_params(rng);
    p.mu = 1.0;
    const auto run = integrate_sueir(p);
    const double n0 = p.initial_population();
    for (const auto& x : run.states) REQUIRE(std::abs(x.total() - n0) <= 1e-9 * n0);
  }
}

TEST_CASE("property: noise is reproducible and scaled by the peak") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(18000 + static_cast<std::uint64_t>(c));
    const auto clean = series::TimeSeries::uniform(rng.vector(rng.integer(2, 200), -5, 5));
    const NoiseSpec spec{rng.uniform(0, 0.5), rng.stream(), rng.integer(0, 1) == 1};
    const auto a = add_noise(clean, spec);
    const auto b = add_noise(clean, spec);
    REQUIRE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    const auto zero = add_noise(clean, NoiseSpec{0.0, spec.seed, spec.per_point});
    REQUIRE(std::equal(zero.values().begin(), zero.values().end(), clean.values().begin()));
  }
}
