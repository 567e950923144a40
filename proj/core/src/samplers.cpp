#include "rfblt/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rfblt/error.hpp"

namespace rfblt::bayes {

double sample_standard_normal(RngStream& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  return dist(rng);
}

double sample_inverse_gamma(double shape, double scale, RngStream& rng) {
  require(shape > 0.0 && scale > 0.0 && std::isfinite(shape) && std::isfinite(scale),
          ErrorCode::InvalidArgument, "inverse gamma needs shape > 0 and scale > 0");
  std::gamma_distribution<double> gamma(shape, 1.0);
  // scale / Gamma(shape, 1) avoids forming 1 / scale, which overflows for
  // denormal scales. The result is kept inside the positive finite doubles.
  const double x = scale / gamma(rng);
  return std::clamp(x, std::numeric_limits<double>::min(), std::numeric_limits<double>::max());
}

double sample_inverse_gaussian(double mu, double lambda, RngStream& rng) {
  require(mu > 0.0 && lambda > 0.0 && std::isfinite(lambda), ErrorCode::InvalidArgument,
          "inverse Gaussian needs mu > 0 and lambda > 0");
  if (!std::isfinite(mu)) {
    // Limit mu -> inf is the Levy law with scale lambda: lambda / N(0,1)^2.
    const double z = sample_standard_normal(rng);
    return lambda / std::max(z * z, std::numeric_limits<double>::min());
  }
  const double nu = sample_standard_normal(rng);
  const double y = nu * nu;
  const double muy = mu * y;
  // Smaller root of the quadratic, written in the cancellation-free form
  // x = mu * 2 lambda / (2 lambda + mu y + sqrt(4 lambda mu y + (mu y)^2)).
  const double x = mu * (2.0 * lambda) / (2.0 * lambda + muy + std::sqrt(muy * (4.0 * lambda + muy)));
  const double u = rng.uniform();
  double out = u <= mu / (mu + x) ? x : mu * mu / x;
  if (!(out > 0.0)) out = std::numeric_limits<double>::min();
  return out;
}

}  // namespace rfblt::bayes
