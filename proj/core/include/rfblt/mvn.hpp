#pragma once

#include <Eigen/Dense>

#include "rfblt/rng.hpp"

namespace rfblt::bayes {

/// Cholesky factor of a symmetric positive-definite matrix, retrying with a
/// diagonal jitter of 1e-10, 1e-8 and 1e-6 times the mean diagonal before
/// throwing SingularPrecision.
Eigen::LLT<Eigen::MatrixXd> robust_cholesky(const Eigen::MatrixXd& spd);

/// Exact draw from N(P^{-1} rhs, P^{-1}) given the precision P, via one DxD
/// Cholesky factorisation (Rue 2001).
Eigen::VectorXd draw_mvn_precision(const Eigen::VectorXd& rhs, const Eigen::MatrixXd& precision,
                                   RngStream& rng);

/// Exact draw from the Gaussian regression posterior with prior covariance
/// noise_var * diag(prior_scale):
///   precision = (Z^T Z + diag(1 / prior_scale)) / noise_var
///   mean      = (Z^T Z + diag(1 / prior_scale))^{-1} Z^T response
/// through an n x n auxiliary system (Bhattacharya, Chakraborty & Mallick
/// 2016). Cheaper than the DxD route when D >> n.
Eigen::VectorXd draw_mvn_woodbury(const Eigen::MatrixXd& Z, const Eigen::VectorXd& response,
                                  double noise_var, const Eigen::VectorXd& prior_scale,
                                  RngStream& rng);

enum class MvnPath { Auto, Cholesky, Woodbury };

/// Draws regression coefficients from the posterior above. `Auto` takes the
/// DxD route when D/n < 2 and the n x n route otherwise. `gram` must equal
/// Z^T Z; it is only read on the DxD route. Neither route divides by
/// noise_var, so tiny noise variances do not overflow.
Eigen::VectorXd draw_gaussian_coefficients(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& gram,
                                           const Eigen::VectorXd& response, double noise_var,
                                           const Eigen::VectorXd& prior_scale, RngStream& rng,
                                           MvnPath path = MvnPath::Auto);

}  // namespace rfblt::bayes
