#include "rfblt/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rfblt/error.hpp"

namespace rfblt::eval {

void ExpandingWindowPlan::validate() const {
  require(horizon >= 1, ErrorCode::EmptyPlan, "plan needs a horizon of at least 1");
  require(first_train_end >= 2, ErrorCode::InsufficientData,
          "the first training prefix needs at least 2 points");
  require(first_train_end + horizon <= series_length, ErrorCode::EmptyPlan,
          "first_train_end + horizon = " + std::to_string(first_train_end + horizon) +
              " exceeds series length " + std::to_string(series_length));
}

double relative_error(std::span<const double> actual, std::span<const double> predicted) {
  require(actual.size() == predicted.size(), ErrorCode::ShapeError,
          "actual and predicted differ in length");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double d = actual[i] - predicted[i];
    num += d * d;
    den += actual[i] * actual[i];
  }
  require(den > 0.0, ErrorCode::UndefinedError, "relative error undefined for all-zero actuals");
  return std::sqrt(num / den);
}

namespace {
int sign(double x) noexcept { return (x > 0.0) - (x < 0.0); }
}  // namespace

int directional_accuracy(double anchor, double actual, double predicted) {
  return sign(actual - anchor) == sign(predicted - anchor) ? 1 : 0;
}

std::vector<double> mda(const Eigen::MatrixXd& per_window) {
  require(per_window.rows() >= 1, ErrorCode::EmptyPlan, "MDA over zero windows");
  std::vector<double> out(static_cast<std::size_t>(per_window.cols()));
  for (Eigen::Index q = 0; q < per_window.cols(); ++q)
    out[static_cast<std::size_t>(q)] = per_window.col(q).mean();
  return out;
}

Coverage coverage(const Eigen::MatrixXd& actuals, const Eigen::MatrixXd& lowers,
                  const Eigen::MatrixXd& uppers) {
  require(actuals.rows() == lowers.rows() && actuals.rows() == uppers.rows() &&
              actuals.cols() == lowers.cols() && actuals.cols() == uppers.cols(),
          ErrorCode::ShapeError, "interval arrays are not aligned");
  require(actuals.rows() >= 1, ErrorCode::EmptyPlan, "coverage over zero windows");
  Coverage out;
  out.probability.assign(static_cast<std::size_t>(actuals.cols()), 0.0);
  out.ranges = uppers - lowers;
  for (Eigen::Index v = 0; v < actuals.rows(); ++v) {
    for (Eigen::Index q = 0; q < actuals.cols(); ++q) {
      require(lowers(v, q) <= uppers(v, q), ErrorCode::InvalidInterval,
              "lower > upper at window " + std::to_string(v) + ", step " + std::to_string(q + 1));
      if (lowers(v, q) <= actuals(v, q) && actuals(v, q) <= uppers(v, q))
        out.probability[static_cast<std::size_t>(q)] += 1.0;
    }
  }
  for (auto& p : out.probability) p /= static_cast<double>(actuals.rows());
  return out;
}

std::vector<double> column_medians(const Eigen::MatrixXd& m) {
  std::vector<double> out(static_cast<std::size_t>(m.cols()));
  std::vector<double> col(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index q = 0; q < m.cols(); ++q) {
    for (Eigen::Index v = 0; v < m.rows(); ++v) col[static_cast<std::size_t>(v)] = m(v, q);
    std::sort(col.begin(), col.end());
    const std::size_t k = col.size();
    out[static_cast<std::size_t>(q)] = k % 2 ? col[k / 2] : 0.5 * (col[k / 2 - 1] + col[k / 2]);
  }
  return out;
}

double MetricReport::median_relative_error() const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(relative_errors.size()), 1);
  for (std::size_t i = 0; i < relative_errors.size(); ++i)
    m(static_cast<Eigen::Index>(i), 0) = relative_errors[i];
  return column_medians(m).front();
}

MetricReport evaluate_cases(std::span<const EvaluationCase> cases, std::size_t horizon,
                            const Forecaster& forecaster) {
  require(!cases.empty(), ErrorCode::EmptyPlan, "no evaluation windows");
  require(horizon >= 1, ErrorCode::EmptyPlan, "horizon must be >= 1");
  const auto W = static_cast<Eigen::Index>(cases.size());
  const auto H = static_cast<Eigen::Index>(horizon);

  MetricReport report;
  report.directional.resize(W, H);
  report.actuals.resize(W, H);
  report.predictions.resize(W, H);
  Eigen::MatrixXd lowers(W, H);
  Eigen::MatrixXd uppers(W, H);
  bool intervals = true;

  for (Eigen::Index v = 0; v < W; ++v) {
    const auto& c = cases[static_cast<std::size_t>(v)];
    require(c.actual.size() == horizon, ErrorCode::ShapeError,
            "window " + std::to_string(v) + " has the wrong number of actuals");
    WindowForecast f;
    try {
      f = forecaster(c.train, horizon, static_cast<std::size_t>(v));
    } catch (const Error& e) {
      throw Error(e.code(), "window " + std::to_string(v) + " (train length " +
                                std::to_string(c.train.size()) + "): " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error("window " + std::to_string(v) + ": " + e.what());
    }
    require(f.mean.size() == horizon, ErrorCode::ShapeError,
            "forecaster returned the wrong horizon at window " + std::to_string(v));

    const double anchor = c.train.values().back();
    report.anchors.push_back(anchor);
    report.train_end_times.push_back(c.train.times().back());
    report.relative_errors.push_back(relative_error(c.actual, f.mean));
    for (Eigen::Index q = 0; q < H; ++q) {
      const auto k = static_cast<std::size_t>(q);
      report.actuals(v, q) = c.actual[k];
      report.predictions(v, q) = f.mean[k];
      report.directional(v, q) = directional_accuracy(anchor, c.actual[k], f.mean[k]);
    }
    if (f.lower && f.upper && f.lower->size() == horizon && f.upper->size() == horizon) {
      for (Eigen::Index q = 0; q < H; ++q) {
        lowers(v, q) = (*f.lower)[static_cast<std::size_t>(q)];
        uppers(v, q) = (*f.upper)[static_cast<std::size_t>(q)];
      }
    } else {
      intervals = false;
    }
  }

  report.mda = mda(report.directional);
  if (intervals) {
    auto cov = coverage(report.actuals, lowers, uppers);
    report.coverage_prob = std::move(cov.probability);
    report.coverage_ranges = std::move(cov.ranges);
    report.lowers = std::move(lowers);
    report.uppers = std::move(uppers);
  }
  return report;
}

MetricReport run_expanding_window(const series::TimeSeries& series, const ExpandingWindowPlan& plan,
                                  const Forecaster& forecaster) {
  plan.validate();
  require(plan.series_length == series.size(), ErrorCode::ShapeError,
          "plan length does not match the series");
  const auto y = series.values();
  const auto t = series.times();
  std::vector<EvaluationCase> cases;
  cases.reserve(plan.window_count());
  for (std::size_t v = plan.first_train_end; v + plan.horizon <= series.size(); ++v) {
    cases.push_back({series.prefix(v),
                     std::vector<double>(y.begin() + static_cast<std::ptrdiff_t>(v),
                                         y.begin() + static_cast<std::ptrdiff_t>(v + plan.horizon)),
                     std::vector<double>(t.begin() + static_cast<std::ptrdiff_t>(v),
                                         t.begin() + static_cast<std::ptrdiff_t>(v + plan.horizon))});
  }
  return evaluate_cases(cases, plan.horizon, forecaster);
}

}  // namespace rfblt::eval
