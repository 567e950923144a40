#include "rfblt/mvn.hpp"

#include <cmath>

#include "rfblt/error.hpp"
#include "rfblt/samplers.hpp"

namespace rfblt::bayes {
namespace {

Eigen::VectorXd standard_normals(Eigen::Index count, RngStream& rng) {
  Eigen::VectorXd z(count);
  for (Eigen::Index i = 0; i < count; ++i) z(i) = sample_standard_normal(rng);
  return z;
}

}  // namespace

Eigen::LLT<Eigen::MatrixXd> robust_cholesky(const Eigen::MatrixXd& spd) {
  require(spd.rows() == spd.cols(), ErrorCode::ShapeError, "Cholesky needs a square matrix");
  require(spd.allFinite(), ErrorCode::NumericalError, "matrix has non-finite entries");
  Eigen::LLT<Eigen::MatrixXd> llt(spd);
  if (llt.info() == Eigen::Success) return llt;

  const double mean_diag = spd.diagonal().mean();
  const double base = mean_diag > 0.0 ? mean_diag : 1.0;
  for (double factor : {1e-10, 1e-8, 1e-6}) {
    Eigen::MatrixXd jittered = spd;
    jittered.diagonal().array() += factor * base;
    llt.compute(jittered);
    if (llt.info() == Eigen::Success) return llt;
  }
  fail(ErrorCode::SingularPrecision, "matrix is not positive definite after jitter 1e-6");
}

Eigen::VectorXd draw_mvn_precision(const Eigen::VectorXd& rhs, const Eigen::MatrixXd& precision,
                                   RngStream& rng) {
  require(rhs.size() == precision.rows(), ErrorCode::ShapeError, "rhs does not match precision");
  const auto llt = robust_cholesky(precision);
  const auto L = llt.matrixL();
  // P = L L^T: mean solves L L^T mu = rhs, noise solves L^T e = z.
  Eigen::VectorXd mean = llt.solve(rhs);
  Eigen::VectorXd z = standard_normals(rhs.size(), rng);
  L.transpose().solveInPlace(z);
  return mean + z;
}

Eigen::VectorXd draw_mvn_woodbury(const Eigen::MatrixXd& Z, const Eigen::VectorXd& response,
                                  double noise_var, const Eigen::VectorXd& prior_scale,
                                  RngStream& rng) {
  require(response.size() == Z.rows() && prior_scale.size() == Z.cols(), ErrorCode::ShapeError,
          "shapes of Z, response and prior scales disagree");
  require(noise_var > 0.0, ErrorCode::InvalidVariance, "noise variance must be > 0");
  const double sigma = std::sqrt(noise_var);

  // The textbook recursion works with Phi = Z / sigma and prior variances
  // sigma^2 * prior_scale. Substituting u = sigma u' and w' = sigma w keeps
  // sigma out of every matrix, so the draw survives sigma^2 near 0.
  Eigen::VectorXd u = standard_normals(Z.cols(), rng);
  u.array() *= prior_scale.array().sqrt();
  const Eigen::VectorXd delta = standard_normals(Z.rows(), rng);
  const Eigen::VectorXd v = Z * u + delta;

  const Eigen::MatrixXd z_scaled = Z * prior_scale.asDiagonal();
  Eigen::MatrixXd system = z_scaled * Z.transpose();
  system.diagonal().array() += 1.0;
  const Eigen::VectorXd w = robust_cholesky(system).solve(response - sigma * v);
  return sigma * u + z_scaled.transpose() * w;
}

Eigen::VectorXd draw_gaussian_coefficients(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& gram,
                                           const Eigen::VectorXd& response, double noise_var,
                                           const Eigen::VectorXd& prior_scale, RngStream& rng,
                                           MvnPath path) {
  if (path == MvnPath::Auto) {
    path = static_cast<double>(Z.cols()) < 2.0 * static_cast<double>(Z.rows()) ? MvnPath::Cholesky
                                                                                : MvnPath::Woodbury;
  }
  if (path == MvnPath::Woodbury) return draw_mvn_woodbury(Z, response, noise_var, prior_scale, rng);

  require(noise_var > 0.0, ErrorCode::InvalidVariance, "noise variance must be > 0");
  require(gram.rows() == Z.cols() && prior_scale.size() == Z.cols() && response.size() == Z.rows(),
          ErrorCode::ShapeError, "shapes of Z, gram, response and prior scales disagree");
  // Precision times sigma^2: Z^T Z + diag(1 / prior_scale).
  Eigen::MatrixXd scaled = gram;
  scaled.diagonal().array() += prior_scale.array().inverse();
  const auto llt = robust_cholesky(scaled);
  Eigen::VectorXd z = standard_normals(Z.cols(), rng);
  llt.matrixL().transpose().solveInPlace(z);
  return llt.solve(Z.transpose() * response) + std::sqrt(noise_var) * z;
}

}  // namespace rfblt::bayes
