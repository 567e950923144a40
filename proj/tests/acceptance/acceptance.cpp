// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rfblt/evaluation.hpp"
#include "rfblt/forecaster.hpp"
#include "rfblt/gibbs.hpp"
#include "rfblt/random_features.hpp"
#include "rfblt/rng.hpp"
#include "rfblt/samplers.hpp"
#include "rfblt/sueir.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace rfblt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0 means no limit
  std::function<Outcome()> body;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

Outcome ridge_matches_conjugate_posterior() {
  RngStream rng(2024);
  const Eigen::Index n = 50, d = 5;
  Eigen::MatrixXd Z(n, d);
  for (Eigen::Index i = 0; i < Z.size(); ++i) Z.data()[i] = bayes::sample_standard_normal(rng);
  Eigen::VectorXd beta_star(d);
  beta_star << 1.5, -2.0, 0.5, 0.0, 1.0;
  Eigen::VectorXd y = 0.7 + (Z * beta_star).array();
  for (Eigen::Index i = 0; i < n; ++i) y(i) += bayes::sample_standard_normal(rng);

  bayes::GibbsConfig cfg;
  cfg.prior = bayes::Prior::Ridge;
  cfg.burn_in = 1000;
  cfg.n_samples = 21000;
  cfg.thin = 1;
  cfg.seed = 31;
  cfg.fixed_sigma_eps_sq = 1.0;
  cfg.fixed_tau_sq = 1.0;
  const auto draws = bayes::gibbs_ridge(y, Z, cfg);
  const Eigen::VectorXd oracle = testing::conjugate_ridge_mean(y, Z);

  double worst = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const auto chain = testing::column(draws.beta, j);
    const double se = testing::batch_means_se(chain, 100);
    worst = std::max(worst, std::abs(testing::mean(chain) - oracle(j)) / se);
  }
  return {draws.size() == 20000 && worst <= 3.0,
          fmt("retained=%zu, worst |mean - oracle| = %.2f s.e.", draws.size(), worst)};
}

Outcome pinned_lasso_equals_ridge() {
  RngStream rng(77);
  const Eigen::Index n = 40, d = 12;
  Eigen::MatrixXd Z(n, d);
  for (Eigen::Index i = 0; i < Z.size(); ++i) Z.data()[i] = bayes::sample_standard_normal(rng);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) y(i) = Z(i, 0) - 0.5 * Z(i, 3) + bayes::sample_standard_normal(rng);

  bayes::GibbsConfig cfg;
  cfg.burn_in = 500;
  cfg.n_samples = 1500;
  cfg.thin = 1;
  cfg.seed = 5;
  const auto ridge = bayes::gibbs_ridge(y, Z, cfg);
  cfg.update_local_scales = false;
  const auto lasso = bayes::gibbs_lasso(y, Z, cfg);
  const bool same = ridge.size() == 1000 && ridge.beta == lasso.beta && ridge.beta0 == lasso.beta0 &&
                    ridge.sigma_eps_sq == lasso.sigma_eps_sq && ridge.tau_sq == lasso.tau_sq &&
                    ridge.xi == lasso.xi && lasso.lambda_sq.isOnes(0.0);
  return {same, fmt("%zu draws compared, exact equality %s", ridge.size(), same ? "holds" : "broken")};
}

Outcome fourier_features_approximate_gaussian_kernel() {
  const std::size_t dim = 9, features_count = 5000, pairs = 50;
  const auto map = features::sample_feature_map(dim, features_count, features::DistributionSpec::normal(0.0, 1.0),
                                                features::DistributionSpec::uniform(0.0, 2.0 * M_PI),
                                                features::Activation::Fourier, 123);
  RngStream rng(456);
  std::size_t within = 0;
  double worst = 0.0;
  for (std::size_t p = 0; p < pairs; ++p) {
    Eigen::VectorXd x(dim), y(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      x(static_cast<Eigen::Index>(k)) = rng.uniform() - 0.5;
      y(static_cast<Eigen::Index>(k)) = rng.uniform() - 0.5;
    }
    const double approx = map.transform(x).dot(map.transform(y));
    const double exact = std::exp(-0.5 * (x - y).squaredNorm());
    const double err = std::abs(approx - exact);
    worst = std::max(worst, err);
    if (err <= 0.05) ++within;
  }
  return {within >= 48, fmt("%zu/%zu pairs within 0.05, worst error %.4f", within, pairs, worst)};
}

Outcome sueir_peak() {
  const auto smoothed = sim::smooth_7day(sim::infectious_proportion(sim::integrate_sueir({})));
  const auto v = smoothed.values();
  const auto it = std::max_element(v.begin(), v.end());
  const double day = smoothed.times()[static_cast<std::size_t>(it - v.begin())];
  return {*it > 0.0 && *it <= 0.25 && day >= 100.0 && day <= 116.0,
          fmt("max = %.4f at day %.0f", *it, day)};
}

// Criteria 5 and 6 share one ensemble run.
struct EnsembleResult {
  double median_relative_error = 0.0;
  double day1_coverage = 0.0;
  std::size_t trajectories = 0;
  std::size_t features = 0;
};

const EnsembleResult& ensemble_backtest() {
  static const EnsembleResult result = [] {
    const std::size_t count = 20, train_end = 85, horizon = 7;
    const auto runs = sim::generate_ensemble({}, sim::NoiseSpec{0.1, 2718, true}, count);

    std::vector<eval::EvaluationCase> cases;
    for (const auto& s : runs) {
      const auto y = s.values();
      const auto t = s.times();
      cases.push_back({s.prefix(train_end), std::vector<double>(y.begin() + train_end, y.begin() + train_end + horizon),
                       std::vector<double>(t.begin() + train_end, t.begin() + train_end + horizon)});
    }

    forecast::FitOptions options;
    options.embed_dim = 9;
    options.smoothing = series::Smoothing::moving_average(7);
    options.gibbs.n_samples = 2000;
    options.gibbs.burn_in = 1000;
    options.gibbs.thin = 5;
    options.mode = forecast::Mode::Rfblt;

    std::size_t used_features = 0;
    const eval::Forecaster forecaster = [&](const series::TimeSeries& train, std::size_t h, std::size_t i) {
      auto o = options;
      o.seed = RngStream(1618).child(i).key();
      const auto model = forecast::fit(train, o);
      used_features = model.feature_map.n_features();
      const auto r = forecast::forecast(model, h, 0.05);
      return eval::WindowForecast{r.mean, r.lower, r.upper};
    };
    const auto report = eval::evaluate_cases(cases, horizon, forecaster);
    return EnsembleResult{report.median_relative_error(), report.coverage_prob.value().at(0), report.windows(),
                          used_features};
  }();
  return result;
}

Outcome ensemble_relative_error() {
  const auto& r = ensemble_backtest();
  return {r.median_relative_error <= 0.35,
          fmt("%zu trajectories, D=%zu, median relative error %.4f", r.trajectories, r.features,
              r.median_relative_error)};
}

Outcome ensemble_day1_coverage() {
  const auto& r = ensemble_backtest();
  return {r.day1_coverage >= 0.6, fmt("day-1 coverage %.2f", r.day1_coverage)};
}

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome property_suites() {
  const int code = shell(std::string(RFBLT_PROPERTY_TESTS_PATH) + " > /dev/null 2>&1");
  return {code == 0, fmt("property binary exit %d, %zu cases per suite", code, testing::kPropertyCases)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> tree(const fs::path& root) {
  std::vector<std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root).generic_string());
  std::sort(files.begin(), files.end());
  return files;
}

Outcome manifest_replay() {
  const fs::path root = fs::temp_directory_path() / ("rfblt_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const std::string cli = RFBLT_CLI_PATH;
  const auto dir = [&](const char* leaf) { return (root / leaf).string(); };
  const std::string quiet = " > /dev/null 2>&1";

  int rc = shell(cli + " simulate --count 4 --noise 0.1 --seed 42 --output-dir " + dir("sim_a") + quiet);
  rc |= shell(cli + " simulate --config " + dir("sim_a") + "/manifest.json --output-dir " + dir("sim_b") + quiet);
  rc |= shell(cli + " evaluate --protocol ensemble --input " + dir("sim_a") +
              " --train-end 85 --horizon 7 --smoothing-window 7 --seed 8 --output-dir " + dir("eval_a") + quiet);
  rc |= shell(cli + " evaluate --config " + dir("eval_a") + "/manifest.json --output-dir " + dir("eval_b") + quiet);

  std::size_t compared = 0, differing = 0;
  bool same_sets = rc == 0;
  if (rc == 0) {
    for (const auto& [a, b] : {std::pair{"sim_a", "sim_b"}, std::pair{"eval_a", "eval_b"}}) {
      const auto fa = tree(root / a), fb = tree(root / b);
      same_sets = same_sets && fa == fb && !fa.empty();
      for (const auto& f : fa) {
        ++compared;
        if (!fs::exists(root / b / f) || slurp(root / a / f) != slurp(root / b / f)) ++differing;
      }
    }
  }
  fs::remove_all(root);
  return {rc == 0 && same_sets && differing == 0,
          fmt("cli exit %d, %zu files compared, %zu differ", rc, compared, differing)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "ridge Gibbs mean vs closed-form posterior", 30.0, ridge_matches_conjugate_posterior},
      {2, "lasso with pinned local scales equals ridge", 0.0, pinned_lasso_equals_ridge},
      {3, "random Fourier kernel approximation", 10.0, fourier_features_approximate_gaussian_kernel},
      {4, "epidemic curve peak", 1.0, sueir_peak},
      {5, "ensemble median 7-day relative error", 600.0, ensemble_relative_error},
      {6, "ensemble day-1 interval coverage", 0.0, ensemble_day1_coverage},
      {7, "property suites", 0.0, property_suites},
      {8, "simulate/evaluate manifest replay", 0.0, manifest_replay},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.time_limit_s <= 0.0 || secs < c.time_limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::string limit = c.time_limit_s > 0.0 ? fmt(" (limit %.0f s)", c.time_limit_s) : "";
    std::printf("%s criterion %d: %s | %s | %.2f s%s\n", pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
                o.detail.c_str(), secs, limit.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
