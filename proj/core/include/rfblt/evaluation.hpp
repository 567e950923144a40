#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rfblt/series.hpp"

namespace rfblt::eval {

/// Expanding-window backtest: train on the first v points and forecast
/// v+1..v+h, for v = first_train_end .. series_length - horizon.
struct ExpandingWindowPlan {
  std::size_t first_train_end = 0;
  std::size_t horizon = 0;
  std::size_t series_length = 0;

  void validate() const;
  /// n - h - m + 1
  std::size_t window_count() const noexcept {
    return series_length - horizon - first_train_end + 1;
  }
};

/// sqrt(sum (y - yhat)^2 / sum y^2). Throws UndefinedError if `actual` is all zero.
double relative_error(std::span<const double> actual, std::span<const double> predicted);

/// 1 when sign(actual - anchor) == sign(predicted - anchor), with sign(0) = 0.
int directional_accuracy(double anchor, double actual, double predicted);

/// Column means of a windows x h matrix of 0/1 directional accuracies.
std::vector<double> mda(const Eigen::MatrixXd& per_window);

struct Coverage {
  std::vector<double> probability;  // per horizon step
  Eigen::MatrixXd ranges;           // windows x h, upper - lower
};

/// Closed-interval coverage: lower <= actual <= upper counts as covered.
Coverage coverage(const Eigen::MatrixXd& actuals, const Eigen::MatrixXd& lowers,
                  const Eigen::MatrixXd& uppers);

/// Median of each column.
std::vector<double> column_medians(const Eigen::MatrixXd& m);

struct WindowForecast {
  std::vector<double> mean;
  std::optional<std::vector<double>> lower;
  std::optional<std::vector<double>> upper;
};

/// Produces an h-step forecast from a training prefix. `window` is the
/// 0-based case index, available for per-window seeding.
using Forecaster = std::function<WindowForecast(const series::TimeSeries& train,
                                                std::size_t horizon, std::size_t window)>;

/// One backtest case: a training series and the h values that followed it.
struct EvaluationCase {
  series::TimeSeries train;
  std::vector<double> actual;
  std::vector<double> actual_times;
};

struct MetricReport {
  std::vector<double> relative_errors;  // one per window
  Eigen::MatrixXd directional;          // windows x h, 0/1
  std::vector<double> mda;              // per horizon step
  std::optional<std::vector<double>> coverage_prob;
  std::optional<Eigen::MatrixXd> coverage_ranges;

  Eigen::MatrixXd actuals;      // windows x h
  Eigen::MatrixXd predictions;  // windows x h
  std::optional<Eigen::MatrixXd> lowers;
  std::optional<Eigen::MatrixXd> uppers;
  std::vector<double> anchors;
  std::vector<double> train_end_times;

  std::size_t windows() const noexcept { return relative_errors.size(); }
  double median_relative_error() const;
};

/// Runs `forecaster` on every case and accumulates the metrics. Coverage is
/// filled in only if every forecast carries an interval.
MetricReport evaluate_cases(std::span<const EvaluationCase> cases, std::size_t horizon,
                            const Forecaster& forecaster);

MetricReport run_expanding_window(const series::TimeSeries& series, const ExpandingWindowPlan& plan,
                                  const Forecaster& forecaster);

struct HoltState {
  double level = 0.0;
  double trend = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double sse = 0.0;  // in-sample one-step-ahead squared error
};

/// Holt's linear trend with (alpha, gamma) chosen on the grid
/// {0.01, ..., 1.00}^2 by in-sample one-step-ahead squared error; the first
/// grid point wins ties. Initialised with S_1 = y_1, T_1 = y_2 - y_1.
HoltState holt_fit(std::span<const double> train);

/// Runs the recursion for fixed smoothing parameters.
HoltState holt_filter(std::span<const double> train, double alpha, double gamma);

/// S_n + q T_n for q = 1..h.
std::vector<double> holt_forecast(const HoltState& state, std::size_t horizon);
std::vector<double> holt_fit_forecast(std::span<const double> train, std::size_t horizon);

}  // namespace rfblt::eval
