#pragma once

#include "rfblt/rng.hpp"

namespace rfblt::bayes {

double sample_standard_normal(RngStream& rng);

/// Draw from Inv-Gamma(shape, scale), i.e. 1 / Gamma(shape, rate = scale).
double sample_inverse_gamma(double shape, double scale, RngStream& rng);

/// Draw from the inverse Gaussian (Wald) law with mean `mu` and shape
/// `lambda`, using the Michael-Schucany-Haas transformation.
double sample_inverse_gaussian(double mu, double lambda, RngStream& rng);

}  // namespace rfblt::bayes
