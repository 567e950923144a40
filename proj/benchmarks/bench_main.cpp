#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "rfblt/forecaster.hpp"
#include "rfblt/gibbs.hpp"
#include "rfblt/random_features.hpp"
#include "rfblt/samplers.hpp"
#include "rfblt/sueir.hpp"

using namespace rfblt;

namespace {

Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  RngStream rng(seed);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = bayes::sample_standard_normal(rng);
  return m;
}

series::TimeSeries noisy_curve() {
  return sim::generate_ensemble({}, sim::NoiseSpec{0.1, 1, true}, 1).front().prefix(85);
}

void BM_FeatureTransform(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const auto map = features::sample_feature_map(9, d, features::DistributionSpec::normal(),
                                                features::DistributionSpec::defaults(features::Family::Uniform),
                                                features::Activation::Fourier, 3);
  const Eigen::MatrixXd design = gaussian_matrix(100, 9, 4);
  for (auto _ : state) benchmark::DoNotOptimize(map.transform_batch(design));
  state.SetItemsProcessed(state.iterations() * design.rows());
}
BENCHMARK(BM_FeatureTransform)->Arg(40)->Arg(500)->Arg(5000);

// Cholesky and Woodbury coefficient paths on either side of D = 2n.
void BM_Gibbs(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const auto d = static_cast<Eigen::Index>(state.range(1));
  const Eigen::MatrixXd Z = gaussian_matrix(n, d, 5);
  const Eigen::VectorXd y = Z.col(0) + 0.1 * gaussian_matrix(n, 1, 6).col(0);
  bayes::GibbsConfig cfg;
  cfg.n_samples = 500;
  cfg.burn_in = 100;
  cfg.thin = 1;
  for (auto _ : state) benchmark::DoNotOptimize(bayes::run_gibbs(y, Z, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.n_samples));
}
BENCHMARK(BM_Gibbs)->Args({76, 38})->Args({76, 400})->Unit(benchmark::kMillisecond);

void BM_FitAndForecast(benchmark::State& state) {
  const auto train = noisy_curve();
  forecast::FitOptions options;
  options.smoothing = series::Smoothing::moving_average(7);
  for (auto _ : state) {
    const auto model = forecast::fit(train, options);
    benchmark::DoNotOptimize(forecast::forecast(model, 7));
  }
}
BENCHMARK(BM_FitAndForecast)->Unit(benchmark::kMillisecond);

void BM_Sueir(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sim::integrate_sueir({}));
}
BENCHMARK(BM_Sueir)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
