#include <string>

#include "rfblt/error.hpp"
#include "rfblt/evaluation.hpp"

namespace rfblt::eval {

HoltState holt_filter(std::span<const double> y, double alpha, double gamma) {
  require(y.size() >= 3, ErrorCode::InsufficientData, "Holt needs at least 3 points");
  require(alpha >= 0.0 && alpha <= 1.0 && gamma >= 0.0 && gamma <= 1.0,
          ErrorCode::InvalidArgument, "Holt smoothing parameters must lie in [0, 1]");
  HoltState s{y[0], y[1] - y[0], alpha, gamma, 0.0};
  for (std::size_t t = 1; t < y.size(); ++t) {
    const double predicted = s.level + s.trend;
    const double err = y[t] - predicted;
    s.sse += err * err;
    const double level = alpha * y[t] + (1.0 - alpha) * predicted;
    s.trend = gamma * (level - s.level) + (1.0 - gamma) * s.trend;
    s.level = level;
  }
  return s;
}

HoltState holt_fit(std::span<const double> train) {
  require(train.size() >= 3, ErrorCode::InsufficientData,
          "Holt needs at least 3 points, got " + std::to_string(train.size()));
  HoltState best;
  bool have = false;
  for (int a = 1; a <= 100; ++a) {
    for (int g = 1; g <= 100; ++g) {
      const auto s = holt_filter(train, a / 100.0, g / 100.0);
      if (!have || s.sse < best.sse) {
        best = s;
        have = true;
      }
    }
  }
  return best;
}

std::vector<double> holt_forecast(const HoltState& state, std::size_t horizon) {
  std::vector<double> out(horizon);
  for (std::size_t q = 1; q <= horizon; ++q)
    out[q - 1] = state.level + static_cast<double>(q) * state.trend;
  return out;
}

std::vector<double> holt_fit_forecast(std::span<const double> train, std::size_t horizon) {
  return holt_forecast(holt_fit(train), horizon);
}

}  // namespace rfblt::eval
