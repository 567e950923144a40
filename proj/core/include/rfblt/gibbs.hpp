#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rfblt/mvn.hpp"
#include "rfblt/rng.hpp"

namespace rfblt::bayes {

enum class Prior { Ridge, Lasso };

std::string_view to_string(Prior p) noexcept;
Prior parse_prior(std::string_view name);

struct GibbsConfig {
  std::size_t n_samples = 2000;
  std::size_t burn_in = 1000;
  std::size_t thin = 5;
  std::uint64_t seed = 0;
  Prior prior = Prior::Lasso;
  MvnPath mvn_path = MvnPath::Auto;

  // Hold a parameter at a fixed value instead of sampling it. Used for
  // conjugate checks; the production pipeline samples everything.
  std::optional<double> fixed_sigma_eps_sq;
  std::optional<double> fixed_tau_sq;
  /// Lasso only: when false, lambda_j^2 stays at 1 and its update consumes
  /// no randomness.
  bool update_local_scales = true;

  /// floor((S - B) / thin)
  std::size_t retained() const noexcept { return (n_samples - burn_in) / thin; }
  void validate() const;
};

/// Retained draws, one row (or entry) per kept iteration.
struct PosteriorDraws {
  Eigen::VectorXd beta0;
  Eigen::MatrixXd beta;       // retained x D
  Eigen::VectorXd sigma_eps_sq;
  Eigen::MatrixXd lambda_sq;  // retained x D; all ones for ridge
  Eigen::VectorXd tau_sq;
  Eigen::VectorXd xi;
  /// Stable identity of each draw (its position in the original chain
  /// output). Predictive noise is keyed on it, so reordering draws reorders
  /// forecast paths without changing them.
  std::vector<std::size_t> draw_id;

  std::size_t size() const noexcept { return static_cast<std::size_t>(beta0.size()); }
  std::size_t n_features() const noexcept { return static_cast<std::size_t>(beta.cols()); }

  /// Keeps only the listed draws, in the listed order.
  PosteriorDraws select(std::span<const std::size_t> rows) const;
};

/// Columns beta0, beta_1..beta_D, sigma_eps_sq, tau_sq, xi, lambda_sq_1..lambda_sq_D.
void write_draws_csv(std::ostream& out, const PosteriorDraws& draws);
PosteriorDraws read_draws_csv(std::istream& in);

/// Full conditional parameters of the Gibbs sweep, exposed for inspection.
namespace conditionals {

struct Normal {
  double mean;
  double variance;
};
struct InverseGamma {
  double shape;
  double scale;
};
struct InverseGaussian {
  double mean;
  double shape;
};

/// beta0 | rest ~ N(mean(y - Z beta), sigma^2 / n); `residual` is y - Z beta.
Normal intercept(std::span<const double> residual, double sigma_eps_sq);

/// sigma^2 | rest ~ Inv-Gamma((n + D)/2, (rss + sum beta_j^2 / (tau^2 lambda_j^2)) / 2).
InverseGamma noise_variance(std::size_t n, std::size_t d, double rss, double weighted_beta_ss);

/// 1/lambda_j^2 | rest ~ IGauss(sqrt(2 tau^2 sigma^2 / beta_j^2), 2); beta_j^2 is
/// clamped at 1e-300.
InverseGaussian inverse_local_scale(double beta_j, double tau_sq, double sigma_eps_sq);

/// tau^2 | rest ~ Inv-Gamma((D + 1)/2, 1/xi + sum beta_j^2 / lambda_j^2 / (2 sigma^2)).
InverseGamma global_scale(std::size_t d, double xi, double sigma_eps_sq, double weighted_beta_ss);

/// xi | rest ~ Inv-Gamma(1, 1 + 1/tau^2).
InverseGamma mixing(double tau_sq);

}  // namespace conditionals

/// Bayesian ridge (lambda_j^2 = 1) Gibbs sampler with Gaussian errors.
PosteriorDraws gibbs_ridge(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z,
                           const GibbsConfig& cfg);

/// Bayesian lasso Gibbs sampler with Gaussian errors and exponential mixing
/// on the local scales.
PosteriorDraws gibbs_lasso(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z,
                           const GibbsConfig& cfg);

/// Dispatches on cfg.prior.
PosteriorDraws run_gibbs(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z,
                         const GibbsConfig& cfg);

/// n log(1 / (sqrt(2 pi) sigma)) - ||y - beta0 1 - Z beta||^2 / (2 sigma^2)
double gaussian_log_likelihood(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z, double beta0,
                               const Eigen::VectorXd& beta, double sigma_eps_sq);

}  // namespace rfblt::bayes
