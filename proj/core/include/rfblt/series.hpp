#pragma once

// Time-series container, differencing, smoothing, delay embedding and
// min-max scaling.
//
// Index convention. The math is usually written 1-based; internally
// everything is 0-based:
//
//   observation y_{t_k}, k = 1..n        values[k-1]
//   derivative  y'_{t_k}, k = 1..n-1     raw[k-1]       (forward difference)
//   lag vector  x_k, k = m..n-1          design.row(k-m) = values[k-m .. k-1]
//   derivative target of x_k             smoothed[k-1]
//   next-value target of x_k             values[k]

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rfblt::series {

/// Ordered observations with strictly increasing, possibly non-uniform, stamps.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> times, std::vector<double> values, std::string name = {});

  /// Stamps start, start + step, ... for each value.
  static TimeSeries uniform(std::vector<double> values, double start = 0.0, double step = 1.0,
                            std::string name = {});

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::string& name() const noexcept { return name_; }

  double time(std::size_t i) const { return times_.at(i); }
  double value(std::size_t i) const { return values_.at(i); }

  /// First `count` observations.
  TimeSeries prefix(std::size_t count) const;

  /// Mean spacing between consecutive stamps.
  double mean_step() const noexcept;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::string name_;
};

/// y'_k = (y_{k+1} - y_k) / (t_{k+1} - t_k), length n-1.
std::vector<double> forward_difference(const TimeSeries& series);

/// Cumulative forward-Euler reconstruction: y_1 = start,
/// y_{k+1} = y_k + y'_k (t_{k+1} - t_k). `times` has one more entry than
/// `derivative`.
std::vector<double> euler_integrate(double start, std::span<const double> derivative,
                                    std::span<const double> times);

/// Trailing mean over up to `window` points; the first window-1 outputs
/// average over the shorter available prefix.
std::vector<double> left_moving_average(std::span<const double> x, std::size_t window);

/// Derivative smoother. Pass-through and left moving average are built in;
/// any other smoother can be plugged in through `custom`.
class Smoothing {
 public:
  using Fn = std::function<std::vector<double>(std::span<const double>)>;

  static Smoothing pass_through() { return Smoothing(); }
  static Smoothing moving_average(std::size_t window);
  static Smoothing custom(std::string name, Fn fn);

  bool is_pass_through() const noexcept { return !fn_ && window_ == 0; }
  std::size_t window() const noexcept { return window_; }
  const std::string& name() const noexcept { return name_; }

  std::vector<double> apply(std::span<const double> x) const;

 private:
  Smoothing() : name_("pass-through") {}

  std::string name_;
  std::size_t window_ = 0;
  Fn fn_;
};

struct DerivativeSeries {
  std::vector<double> raw;
  std::vector<double> smoothed;
  std::vector<double> residuals;  // raw - smoothed
  double sigma_delta_sq = 0.0;
};

/// Differences, smooths and estimates the smoothing-error variance
/// sigma_delta^2 = sum(delta^2) / (n - 2). Pass-through yields zero residuals
/// and zero variance.
DerivativeSeries build_derivative_series(const TimeSeries& series, const Smoothing& smoothing);

enum class TargetMode { Derivative, NextValue };

struct EmbeddingDataset {
  Eigen::MatrixXd design;   // (n - m) x m
  Eigen::VectorXd targets;  // n - m
  std::size_t embed_dim = 0;
  TargetMode mode = TargetMode::Derivative;
  /// 0-based index into the source series of the last value in each row.
  std::vector<std::size_t> window_end;
};

/// Delay matrix with one row per lag vector x_m..x_{n-1}. `deriv` is only
/// read in derivative mode and must come from `series`.
EmbeddingDataset build_embedding(const TimeSeries& series, const DerivativeSeries* deriv,
                                 std::size_t embed_dim, TargetMode mode);

struct ScalerParams {
  double min = 0.0;
  double max = 1.0;

  double range() const noexcept { return max - min; }
  double apply(double x) const noexcept { return (x - min) / (max - min); }
  double invert(double x) const noexcept { return x * (max - min) + min; }
};

/// Min-max scaler fitted on a training window; rejects constant windows.
ScalerParams fit_scaler(std::span<const double> train);
std::vector<double> apply(const ScalerParams& scaler, std::span<const double> x);
std::vector<double> invert(const ScalerParams& scaler, std::span<const double> x);
TimeSeries apply(const ScalerParams& scaler, const TimeSeries& series);

}  // namespace rfblt::series
