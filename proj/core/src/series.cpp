#include "rfblt/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "rfblt/error.hpp"

namespace rfblt::series {

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values, std::string name)
    : times_(std::move(times)), values_(std::move(values)), name_(std::move(name)) {
  require(times_.size() == values_.size(), ErrorCode::ShapeError,
          "times and values differ in length");
  require(values_.size() >= 2, ErrorCode::InsufficientData, "series needs at least 2 points");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    require(std::isfinite(values_[i]) && std::isfinite(times_[i]), ErrorCode::InvalidArgument,
            "non-finite entry at index " + std::to_string(i));
    if (i > 0) {
      require(times_[i] > times_[i - 1], ErrorCode::InvalidArgument,
              "time stamps must be strictly increasing (index " + std::to_string(i) + ")");
    }
  }
}

TimeSeries TimeSeries::uniform(std::vector<double> values, double start, double step,
                               std::string name) {
  std::vector<double> times(values.size());
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = start + step * static_cast<double>(i);
  return TimeSeries(std::move(times), std::move(values), std::move(name));
}

TimeSeries TimeSeries::prefix(std::size_t count) const {
  require(count <= size(), ErrorCode::InvalidArgument, "prefix longer than series");
  return TimeSeries({times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(count)},
                    {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)}, name_);
}

double TimeSeries::mean_step() const noexcept {
  return (times_.back() - times_.front()) / static_cast<double>(times_.size() - 1);
}

std::vector<double> forward_difference(const TimeSeries& series) {
  require(series.size() >= 2, ErrorCode::InsufficientData, "forward difference needs 2 points");
  const auto t = series.times();
  const auto y = series.values();
  std::vector<double> out(y.size() - 1);
  for (std::size_t k = 0; k + 1 < y.size(); ++k) out[k] = (y[k + 1] - y[k]) / (t[k + 1] - t[k]);
  return out;
}

std::vector<double> euler_integrate(double start, std::span<const double> derivative,
                                    std::span<const double> times) {
  require(times.size() == derivative.size() + 1, ErrorCode::ShapeError,
          "need one more time stamp than derivative values");
  std::vector<double> out(times.size());
  out[0] = start;
  for (std::size_t k = 0; k < derivative.size(); ++k)
    out[k + 1] = out[k] + derivative[k] * (times[k + 1] - times[k]);
  return out;
}

std::vector<double> left_moving_average(std::span<const double> x, std::size_t window) {
  require(window >= 1 && window <= x.size(), ErrorCode::InvalidWindow,
          "window " + std::to_string(window) + " outside [1, " + std::to_string(x.size()) + "]");
  std::vector<double> out(x.size());
  // Windows are summed directly rather than with a running sum so that a
  // constant input gives a bit-exact constant output.
  for (std::size_t k = 0; k < x.size(); ++k) {
    const std::size_t first = k + 1 >= window ? k + 1 - window : 0;
    double sum = 0.0;
    for (std::size_t j = first; j <= k; ++j) sum += x[j];
    out[k] = sum / static_cast<double>(k - first + 1);
  }
  return out;
}

Smoothing Smoothing::moving_average(std::size_t window) {
  require(window >= 1, ErrorCode::InvalidWindow, "moving-average window must be >= 1");
  Smoothing s;
  s.name_ = "moving-average(" + std::to_string(window) + ")";
  s.window_ = window;
  return s;
}

Smoothing Smoothing::custom(std::string name, Fn fn) {
  require(static_cast<bool>(fn), ErrorCode::InvalidArgument, "custom smoother is empty");
  Smoothing s;
  s.name_ = std::move(name);
  s.fn_ = std::move(fn);
  return s;
}

std::vector<double> Smoothing::apply(std::span<const double> x) const {
  if (fn_) {
    auto out = fn_(x);
    require(out.size() == x.size(), ErrorCode::ShapeError, "smoother changed the length");
    return out;
  }
  if (window_ == 0) return {x.begin(), x.end()};
  return left_moving_average(x, window_);
}

DerivativeSeries build_derivative_series(const TimeSeries& series, const Smoothing& smoothing) {
  DerivativeSeries out;
  out.raw = forward_difference(series);
  if (smoothing.is_pass_through()) {
    out.smoothed = out.raw;
    out.residuals.assign(out.raw.size(), 0.0);
    out.sigma_delta_sq = 0.0;
    return out;
  }
  const std::size_t n = series.size();
  require(n >= 3, ErrorCode::InsufficientData, "smoothing-error variance needs n >= 3");
  out.smoothed = smoothing.apply(out.raw);
  out.residuals.resize(out.raw.size());
  double ss = 0.0;
  for (std::size_t k = 0; k < out.raw.size(); ++k) {
    out.residuals[k] = out.raw[k] - out.smoothed[k];
    ss += out.residuals[k] * out.residuals[k];
  }
  out.sigma_delta_sq = ss / static_cast<double>(n - 2);
  return out;
}

EmbeddingDataset build_embedding(const TimeSeries& series, const DerivativeSeries* deriv,
                                 std::size_t embed_dim, TargetMode mode) {
  const std::size_t n = series.size();
  require(embed_dim >= 1, ErrorCode::InvalidArgument, "embedding dimension must be >= 1");
  require(embed_dim < n, ErrorCode::EmbeddingTooLarge,
          "embedding dimension " + std::to_string(embed_dim) + " >= series length " +
              std::to_string(n));
  if (mode == TargetMode::Derivative) {
    require(deriv != nullptr, ErrorCode::InvalidArgument, "derivative mode needs derivatives");
    require(deriv->smoothed.size() == n - 1, ErrorCode::ShapeError,
            "derivative series does not match the source series");
  }

  const std::size_t rows = n - embed_dim;
  const auto y = series.values();
  EmbeddingDataset out;
  out.design.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(embed_dim));
  out.targets.resize(static_cast<Eigen::Index>(rows));
  out.embed_dim = embed_dim;
  out.mode = mode;
  out.window_end.resize(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < embed_dim; ++j)
      out.design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = y[i + j];
    const std::size_t end = i + embed_dim - 1;
    out.window_end[i] = end;
    out.targets(static_cast<Eigen::Index>(i)) =
        mode == TargetMode::Derivative ? deriv->smoothed[end] : y[end + 1];
  }
  return out;
}

ScalerParams fit_scaler(std::span<const double> train) {
  require(!train.empty(), ErrorCode::InsufficientData, "cannot fit a scaler on no data");
  const auto [lo, hi] = std::minmax_element(train.begin(), train.end());
  require(*hi > *lo, ErrorCode::DegenerateScale, "training window is constant");
  return {*lo, *hi};
}

std::vector<double> apply(const ScalerParams& scaler, std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scaler.apply(x[i]);
  return out;
}

std::vector<double> invert(const ScalerParams& scaler, std::span<const double> x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = scaler.invert(x[i]);
  return out;
}

TimeSeries apply(const ScalerParams& scaler, const TimeSeries& series) {
  return TimeSeries({series.times().begin(), series.times().end()}, apply(scaler, series.values()),
                    series.name());
}

}  // namespace rfblt::series
