#pragma once

// Fitting and recursive probabilistic forecasting with random-feature
// Bayesian regression on delay embeddings.
//
// Two variants share the pipeline:
//   Rfblt  regress the (smoothed) forward-difference derivative on the lag
//          vector, then forecast by Euler integration with two noise
//          sources per step: the regression noise eps ~ N(0, sigma_eps^2)
//          of each draw and the smoothing error delta ~ N(0, sigma_delta^2).
//   Rfbl   regress the next value directly on the lag vector; no smoothing
//          error term.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rfblt/gibbs.hpp"
#include "rfblt/random_features.hpp"
#include "rfblt/series.hpp"

namespace rfblt::forecast {

enum class Mode { Rfblt, Rfbl };

std::string_view to_string(Mode m) noexcept;
Mode parse_mode(std::string_view name);

struct FitOptions {
  std::size_t embed_dim = 9;
  /// Feature count; when unset it follows `feature_policy` applied to the
  /// number of embedding rows.
  std::optional<std::size_t> n_features;
  features::FeatureCountPolicy feature_policy = features::FeatureCountPolicy::half();
  series::Smoothing smoothing = series::Smoothing::pass_through();
  features::DistributionSpec weight_law = features::DistributionSpec::normal(0.0, 1.0);
  features::DistributionSpec bias_law =
      features::DistributionSpec::defaults(features::Family::Uniform);
  features::Activation activation = features::Activation::Fourier;
  /// Sampler settings. Its `seed` field is ignored; `seed` below drives
  /// every random stage.
  bayes::GibbsConfig gibbs;
  bool normalize = false;
  Mode mode = Mode::Rfblt;
  std::uint64_t seed = 0;
};

struct RfbltModel {
  features::FeatureMap feature_map;
  bayes::PosteriorDraws draws;
  double sigma_delta_sq = 0.0;
  std::string smoothing;
  std::size_t embed_dim = 0;
  std::optional<series::ScalerParams> scaler;
  Mode mode = Mode::Rfblt;
  /// Last `embed_dim` training values, in model (scaled) units.
  std::vector<double> tail;
  double last_time = 0.0;
  double time_step = 1.0;
  std::uint64_t seed = 0;
};

RfbltModel fit(const series::TimeSeries& series, const FitOptions& options);

struct ForecastOptions {
  std::size_t horizon = 7;
  double alpha = 0.05;
  /// Future stamps; defaults to last_time + k * time_step.
  std::optional<std::vector<double>> times;
  /// Called with (draw row, step index from 0, lag vector) before each
  /// feature transform.
  std::function<void(std::size_t, std::size_t, std::span<const double>)> on_lag;
};

struct ForecastResult {
  std::vector<double> horizon_times;
  std::vector<double> mean;
  std::vector<double> lower;
  std::vector<double> upper;
  Eigen::MatrixXd sample_paths;  // draws x horizon, original units
  double alpha = 0.05;

  std::size_t horizon() const noexcept { return mean.size(); }
};

ForecastResult forecast(const RfbltModel& model, const ForecastOptions& options);
ForecastResult forecast(const RfbltModel& model, std::size_t horizon, double alpha = 0.05);

/// Posterior-predictive mean per horizon step.
std::vector<double> point_forecast(const ForecastResult& result);

/// Sample quantile with linear interpolation between order statistics
/// (Hyndman-Fan type 7). `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double p);

/// Mean and type-7 quantile summary of each column of `paths`.
void summarize_paths(const Eigen::MatrixXd& paths, double alpha, std::vector<double>& mean,
                     std::vector<double>& lower, std::vector<double>& upper);

/// Columns time, mean, lower, upper.
void write_forecast_csv(std::ostream& out, const ForecastResult& result);
/// One row per draw, one column per horizon step (h1..hH).
void write_sample_paths_csv(std::ostream& out, const ForecastResult& result);
Eigen::MatrixXd read_sample_paths_csv(std::istream& in);

}  // namespace rfblt::forecast
