#include "rfblt/forecaster.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <string>

#include "rfblt/csv.hpp"
#include "rfblt/error.hpp"

namespace rfblt::forecast {

std::string_view to_string(Mode m) noexcept { return m == Mode::Rfblt ? "rfblt" : "rfbl"; }

Mode parse_mode(std::string_view name) {
  if (name == "rfblt" || name == "rfBLT") return Mode::Rfblt;
  if (name == "rfbl" || name == "rfBL") return Mode::Rfbl;
  fail(ErrorCode::InvalidArgument, "unknown mode '" + std::string(name) + "'");
}

RfbltModel fit(const series::TimeSeries& raw_series, const FitOptions& options) {
  const std::size_t n = raw_series.size();
  const std::size_t m = options.embed_dim;
  require(m >= 1, ErrorCode::InvalidArgument, "embedding dimension must be >= 1");
  require(n > m + 2, ErrorCode::InsufficientData,
          "need more than m + 2 = " + std::to_string(m + 2) + " points, got " + std::to_string(n));

  std::optional<series::ScalerParams> scaler;
  if (options.normalize) scaler = series::fit_scaler(raw_series.values());
  const series::TimeSeries data = scaler ? series::apply(*scaler, raw_series) : raw_series;

  series::EmbeddingDataset dataset;
  double sigma_delta_sq = 0.0;
  if (options.mode == Mode::Rfblt) {
    const auto deriv = series::build_derivative_series(data, options.smoothing);
    sigma_delta_sq = deriv.sigma_delta_sq;
    dataset = series::build_embedding(data, &deriv, m, series::TargetMode::Derivative);
  } else {
    dataset = series::build_embedding(data, nullptr, m, series::TargetMode::NextValue);
  }

  const std::size_t rows = static_cast<std::size_t>(dataset.design.rows());
  const std::size_t d =
      options.n_features.value_or(features::default_feature_count(rows, options.feature_policy));
  require(d >= 1, ErrorCode::InvalidArgument, "feature count must be >= 1");

  const RngStream root(options.seed);
  auto feature_map = features::sample_feature_map(m, d, options.weight_law, options.bias_law,
                                                  options.activation,
                                                  root.child(streams::kFeatureMap));
  const Eigen::MatrixXd Z = feature_map.transform_batch(dataset.design);

  bayes::GibbsConfig gibbs = options.gibbs;
  gibbs.seed = options.seed;
  auto draws = bayes::run_gibbs(dataset.targets, Z, gibbs);

  const auto values = data.values();
  return RfbltModel{
      .feature_map = std::move(feature_map),
      .draws = std::move(draws),
      .sigma_delta_sq = sigma_delta_sq,
      .smoothing = options.mode == Mode::Rfblt ? options.smoothing.name() : "none",
      .embed_dim = m,
      .scaler = scaler,
      .mode = options.mode,
      .tail = std::vector<double>(values.end() - static_cast<std::ptrdiff_t>(m), values.end()),
      .last_time = data.times().back(),
      .time_step = data.mean_step(),
      .seed = options.seed,
  };
}

double quantile_sorted(std::span<const double> sorted, double p) {
  require(!sorted.empty(), ErrorCode::InsufficientData, "quantile of an empty sample");
  require(p >= 0.0 && p <= 1.0, ErrorCode::InvalidArgument, "quantile level outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

void summarize_paths(const Eigen::MatrixXd& paths, double alpha, std::vector<double>& mean,
                     std::vector<double>& lower, std::vector<double>& upper) {
  const auto h = static_cast<std::size_t>(paths.cols());
  mean.assign(h, 0.0);
  lower.assign(h, 0.0);
  upper.assign(h, 0.0);
  std::vector<double> column(static_cast<std::size_t>(paths.rows()));
  for (std::size_t k = 0; k < h; ++k) {
    double sum = 0.0;
    for (std::size_t s = 0; s < column.size(); ++s) {
      column[s] = paths(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k));
      sum += column[s];
    }
    mean[k] = sum / static_cast<double>(column.size());
    std::sort(column.begin(), column.end());
    lower[k] = quantile_sorted(column, alpha / 2.0);
    upper[k] = quantile_sorted(column, 1.0 - alpha / 2.0);
  }
}

ForecastResult forecast(const RfbltModel& model, const ForecastOptions& options) {
  const std::size_t h = options.horizon;
  const std::size_t m = model.embed_dim;
  require(h >= 1, ErrorCode::InvalidArgument, "horizon must be >= 1");
  require(options.alpha > 0.0 && options.alpha < 1.0, ErrorCode::InvalidArgument,
          "alpha must lie in (0, 1)");
  require(model.tail.size() == m && model.feature_map.input_dim() == m, ErrorCode::ShapeError,
          "model tail does not match the embedding dimension");
  require(model.draws.size() >= 1, ErrorCode::InsufficientData, "model has no posterior draws");

  ForecastResult result;
  result.alpha = options.alpha;
  if (options.times) {
    require(options.times->size() == h, ErrorCode::ShapeError, "need one time stamp per step");
    result.horizon_times = *options.times;
  } else {
    result.horizon_times.resize(h);
    for (std::size_t k = 0; k < h; ++k)
      result.horizon_times[k] = model.last_time + static_cast<double>(k + 1) * model.time_step;
  }
  for (std::size_t k = 0; k < h; ++k) {
    const double prev = k == 0 ? model.last_time : result.horizon_times[k - 1];
    require(result.horizon_times[k] > prev, ErrorCode::InvalidArgument,
            "forecast time stamps must be increasing");
  }

  const auto& draws = model.draws;
  const std::size_t n_draws = draws.size();
  const double sigma_delta = std::sqrt(model.sigma_delta_sq);
  const RngStream predictive = RngStream(model.seed).child(streams::kPredictive);

  result.sample_paths.resize(static_cast<Eigen::Index>(n_draws), static_cast<Eigen::Index>(h));
  std::vector<double> history(m + h);
  for (std::size_t s = 0; s < n_draws; ++s) {
    const auto row = static_cast<Eigen::Index>(s);
    const std::size_t id = draws.draw_id.empty() ? s : draws.draw_id[s];
    const double sigma_eps = std::sqrt(draws.sigma_eps_sq(row));
    std::copy(model.tail.begin(), model.tail.end(), history.begin());
    for (std::size_t k = 0; k < h; ++k) {
      const std::span<const double> lag(history.data() + k, m);
      if (options.on_lag) options.on_lag(s, k, lag);
      const Eigen::VectorXd z = model.feature_map.transform(lag);

      RngStream rng = predictive.child({static_cast<std::uint64_t>(id), static_cast<std::uint64_t>(k)});
      std::normal_distribution<double> normal(0.0, 1.0);
      const double eps = sigma_eps * normal(rng);
      double next = draws.beta0(row) + z.dot(draws.beta.row(row).transpose()) + eps;
      if (model.mode == Mode::Rfblt) {
        const double delta = sigma_delta * normal(rng);
        const double prev_time = k == 0 ? model.last_time : result.horizon_times[k - 1];
        next = history[m + k - 1] + (next + delta) * (result.horizon_times[k] - prev_time);
      }
      if (!std::isfinite(next)) {
        fail(ErrorCode::NumericalError, "non-finite prediction for draw " + std::to_string(s) +
                                            " at step " + std::to_string(k + 1));
      }
      history[m + k] = next;
      result.sample_paths(row, static_cast<Eigen::Index>(k)) =
          model.scaler ? model.scaler->invert(next) : next;
    }
  }

  summarize_paths(result.sample_paths, options.alpha, result.mean, result.lower, result.upper);
  return result;
}

ForecastResult forecast(const RfbltModel& model, std::size_t horizon, double alpha) {
  ForecastOptions options;
  options.horizon = horizon;
  options.alpha = alpha;
  return forecast(model, options);
}

std::vector<double> point_forecast(const ForecastResult& result) { return result.mean; }

void write_forecast_csv(std::ostream& out, const ForecastResult& result) {
  csv::Table table{{"time", "mean", "lower", "upper"}, {}};
  for (std::size_t k = 0; k < result.horizon(); ++k)
    table.rows.push_back({result.horizon_times[k], result.mean[k], result.lower[k], result.upper[k]});
  csv::write_table(out, table);
}

void write_sample_paths_csv(std::ostream& out, const ForecastResult& result) {
  csv::Table table;
  for (std::size_t k = 1; k <= result.horizon(); ++k) table.header.push_back("h" + std::to_string(k));
  for (Eigen::Index s = 0; s < result.sample_paths.rows(); ++s) {
    std::vector<double> row(result.sample_paths.cols());
    for (Eigen::Index k = 0; k < result.sample_paths.cols(); ++k)
      row[static_cast<std::size_t>(k)] = result.sample_paths(s, k);
    table.rows.push_back(std::move(row));
  }
  csv::write_table(out, table);
}

Eigen::MatrixXd read_sample_paths_csv(std::istream& in) {
  const auto table = csv::read_table(in);
  Eigen::MatrixXd paths(static_cast<Eigen::Index>(table.rows.size()),
                        static_cast<Eigen::Index>(table.header.size()));
  for (std::size_t s = 0; s < table.rows.size(); ++s)
    for (std::size_t k = 0; k < table.header.size(); ++k)
      paths(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k)) = table.rows[s][k];
  return paths;
}

}  // namespace rfblt::forecast
