#include "rfblt/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "rfblt/csv.hpp"
#include "rfblt/error.hpp"
#include "rfblt/samplers.hpp"

namespace rfblt::bayes {

std::string_view to_string(Prior p) noexcept { return p == Prior::Ridge ? "ridge" : "lasso"; }

Prior parse_prior(std::string_view name) {
  if (name == "ridge") return Prior::Ridge;
  if (name == "lasso") return Prior::Lasso;
  fail(ErrorCode::InvalidArgument, "unknown prior '" + std::string(name) + "'");
}

void GibbsConfig::validate() const {
  require(thin >= 1, ErrorCode::InvalidArgument, "thin must be >= 1");
  require(n_samples > burn_in, ErrorCode::InvalidArgument, "samples must exceed burn-in");
  require(retained() >= 1, ErrorCode::InvalidArgument, "no draws retained after thinning");
  if (fixed_sigma_eps_sq) {
    require(*fixed_sigma_eps_sq > 0.0, ErrorCode::InvalidVariance, "fixed sigma^2 must be > 0");
  }
  if (fixed_tau_sq) {
    require(*fixed_tau_sq > 0.0, ErrorCode::InvalidVariance, "fixed tau^2 must be > 0");
  }
}

PosteriorDraws PosteriorDraws::select(std::span<const std::size_t> rows) const {
  PosteriorDraws out;
  const auto k = static_cast<Eigen::Index>(rows.size());
  out.beta0.resize(k);
  out.beta.resize(k, beta.cols());
  out.sigma_eps_sq.resize(k);
  out.lambda_sq.resize(k, lambda_sq.cols());
  out.tau_sq.resize(k);
  out.xi.resize(k);
  out.draw_id.resize(rows.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto r = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)]);
    require(r < beta0.size(), ErrorCode::InvalidArgument, "draw index out of range");
    out.beta0(i) = beta0(r);
    out.beta.row(i) = beta.row(r);
    out.sigma_eps_sq(i) = sigma_eps_sq(r);
    out.lambda_sq.row(i) = lambda_sq.row(r);
    out.tau_sq(i) = tau_sq(r);
    out.xi(i) = xi(r);
    out.draw_id[static_cast<std::size_t>(i)] = draw_id.at(static_cast<std::size_t>(r));
  }
  return out;
}

void write_draws_csv(std::ostream& out, const PosteriorDraws& draws) {
  const auto d = draws.beta.cols();
  csv::Table table;
  table.header.push_back("beta0");
  for (Eigen::Index j = 1; j <= d; ++j) table.header.push_back("beta_" + std::to_string(j));
  table.header.insert(table.header.end(), {"sigma_eps_sq", "tau_sq", "xi"});
  for (Eigen::Index j = 1; j <= d; ++j) table.header.push_back("lambda_sq_" + std::to_string(j));
  for (Eigen::Index i = 0; i < draws.beta0.size(); ++i) {
    std::vector<double> row;
    row.reserve(table.header.size());
    row.push_back(draws.beta0(i));
    for (Eigen::Index j = 0; j < d; ++j) row.push_back(draws.beta(i, j));
    row.push_back(draws.sigma_eps_sq(i));
    row.push_back(draws.tau_sq(i));
    row.push_back(draws.xi(i));
    for (Eigen::Index j = 0; j < d; ++j) row.push_back(draws.lambda_sq(i, j));
    table.rows.push_back(std::move(row));
  }
  csv::write_table(out, table);
}

PosteriorDraws read_draws_csv(std::istream& in) {
  const auto table = csv::read_table(in);
  const auto width = static_cast<Eigen::Index>(table.header.size());
  require(width >= 6 && (width - 4) % 2 == 0 && table.header.front() == "beta0",
          ErrorCode::InvalidArgument, "not a posterior draws table");
  const Eigen::Index d = (width - 4) / 2;
  const auto k = static_cast<Eigen::Index>(table.rows.size());
  PosteriorDraws draws;
  draws.beta0.resize(k);
  draws.beta.resize(k, d);
  draws.sigma_eps_sq.resize(k);
  draws.lambda_sq.resize(k, d);
  draws.tau_sq.resize(k);
  draws.xi.resize(k);
  draws.draw_id.resize(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    draws.beta0(i) = row[0];
    for (Eigen::Index j = 0; j < d; ++j) draws.beta(i, j) = row[static_cast<std::size_t>(1 + j)];
    draws.sigma_eps_sq(i) = row[static_cast<std::size_t>(1 + d)];
    draws.tau_sq(i) = row[static_cast<std::size_t>(2 + d)];
    draws.xi(i) = row[static_cast<std::size_t>(3 + d)];
    for (Eigen::Index j = 0; j < d; ++j)
      draws.lambda_sq(i, j) = row[static_cast<std::size_t>(4 + d + j)];
    draws.draw_id[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
  }
  return draws;
}

namespace conditionals {

Normal intercept(std::span<const double> residual, double sigma_eps_sq) {
  require(!residual.empty(), ErrorCode::InsufficientData, "intercept needs data");
  double sum = 0.0;
  for (double r : residual) sum += r;
  const double n = static_cast<double>(residual.size());
  return {sum / n, sigma_eps_sq / n};
}

InverseGamma noise_variance(std::size_t n, std::size_t d, double rss, double weighted_beta_ss) {
  return {0.5 * static_cast<double>(n + d), 0.5 * (rss + weighted_beta_ss)};
}

InverseGaussian inverse_local_scale(double beta_j, double tau_sq, double sigma_eps_sq) {
  const double beta_sq = std::max(beta_j * beta_j, 1e-300);
  return {std::sqrt(2.0 * tau_sq * sigma_eps_sq / beta_sq), 2.0};
}

InverseGamma global_scale(std::size_t d, double xi, double sigma_eps_sq, double weighted_beta_ss) {
  return {0.5 * static_cast<double>(d + 1), 1.0 / xi + weighted_beta_ss / (2.0 * sigma_eps_sq)};
}

InverseGamma mixing(double tau_sq) { return {1.0, 1.0 + 1.0 / tau_sq}; }

}  // namespace conditionals

namespace {

void check_inputs(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z) {
  require(Z.rows() == y.size(), ErrorCode::ShapeError,
          "Z has " + std::to_string(Z.rows()) + " rows, y has " + std::to_string(y.size()));
  require(y.size() >= 2, ErrorCode::InsufficientData, "Gibbs sampler needs n >= 2");
  require(Z.cols() >= 1, ErrorCode::ShapeError, "Gibbs sampler needs D >= 1");
  require(y.allFinite() && Z.allFinite(), ErrorCode::NumericalError, "non-finite input data");
}

void check_positive(double value, const char* what, std::size_t iteration) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(ErrorCode::NumericalError, std::string(what) + " draw is not a positive finite number at "
                                        "iteration " + std::to_string(iteration));
  }
}

PosteriorDraws run_chain(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z,
                         const GibbsConfig& cfg, bool lasso) {
  cfg.validate();
  check_inputs(y, Z);

  const auto n = static_cast<std::size_t>(Z.rows());
  const auto d = static_cast<std::size_t>(Z.cols());
  const Eigen::Index D = Z.cols();
  const Eigen::MatrixXd gram = Z.transpose() * Z;
  RngStream rng = RngStream(cfg.seed).child(streams::kGibbs);

  double beta0 = y.mean();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(D);
  double sigma_sq = (y.array() - beta0).square().sum() / static_cast<double>(n - 1);
  if (!(sigma_sq > 0.0)) sigma_sq = 1.0;
  if (cfg.fixed_sigma_eps_sq) sigma_sq = *cfg.fixed_sigma_eps_sq;
  Eigen::VectorXd lambda_sq = Eigen::VectorXd::Ones(D);
  double tau_sq = cfg.fixed_tau_sq.value_or(1.0);
  double xi = 1.0;

  const std::size_t kept = cfg.retained();
  PosteriorDraws out;
  out.beta0.resize(static_cast<Eigen::Index>(kept));
  out.beta.resize(static_cast<Eigen::Index>(kept), D);
  out.sigma_eps_sq.resize(static_cast<Eigen::Index>(kept));
  out.lambda_sq.resize(static_cast<Eigen::Index>(kept), D);
  out.tau_sq.resize(static_cast<Eigen::Index>(kept));
  out.xi.resize(static_cast<Eigen::Index>(kept));
  out.draw_id.resize(kept);

  Eigen::VectorXd residual(y.size());
  std::size_t stored = 0;
  for (std::size_t s = 1; s <= cfg.n_samples; ++s) {
    residual = y - Z * beta;
    const auto b0 = conditionals::intercept({residual.data(), n}, sigma_sq);
    beta0 = b0.mean + std::sqrt(b0.variance) * sample_standard_normal(rng);

    const Eigen::VectorXd response = y.array() - beta0;
    const Eigen::VectorXd prior_scale = tau_sq * lambda_sq;
    beta = draw_gaussian_coefficients(Z, gram, response, sigma_sq, prior_scale, rng, cfg.mvn_path);
    if (!beta.allFinite()) {
      fail(ErrorCode::NumericalError, "non-finite coefficient draw at iteration " + std::to_string(s));
    }

    const double rss = (response - Z * beta).squaredNorm();
    if (!cfg.fixed_sigma_eps_sq) {
      const double penalty = (beta.array().square() / (tau_sq * lambda_sq.array())).sum();
      const auto ig = conditionals::noise_variance(n, d, rss, penalty);
      // An exact fit drives the scale to 0 in floating point.
      sigma_sq = sample_inverse_gamma(ig.shape, std::max(ig.scale, std::numeric_limits<double>::min()), rng);
      check_positive(sigma_sq, "sigma_eps^2", s);
    }

    if (lasso && cfg.update_local_scales) {
      for (Eigen::Index j = 0; j < D; ++j) {
        const auto ig = conditionals::inverse_local_scale(beta(j), tau_sq, sigma_sq);
        lambda_sq(j) = 1.0 / sample_inverse_gaussian(ig.mean, ig.shape, rng);
        check_positive(lambda_sq(j), "lambda_j^2", s);
      }
    }

    if (!cfg.fixed_tau_sq) {
      const double weighted = (beta.array().square() / lambda_sq.array()).sum();
      const auto ig = conditionals::global_scale(d, xi, sigma_sq, weighted);
      tau_sq = sample_inverse_gamma(ig.shape, ig.scale, rng);
      check_positive(tau_sq, "tau^2", s);
    }

    const auto mix = conditionals::mixing(tau_sq);
    xi = sample_inverse_gamma(mix.shape, mix.scale, rng);
    check_positive(xi, "xi", s);

    if (s > cfg.burn_in && (s - cfg.burn_in) % cfg.thin == 0 && stored < kept) {
      const auto r = static_cast<Eigen::Index>(stored++);
      out.beta0(r) = beta0;
      out.beta.row(r) = beta.transpose();
      out.sigma_eps_sq(r) = sigma_sq;
      out.lambda_sq.row(r) = lambda_sq.transpose();
      out.tau_sq(r) = tau_sq;
      out.xi(r) = xi;
      out.draw_id[stored - 1] = stored - 1;
    }
  }
  return out;
}

}  // namespace

PosteriorDraws gibbs_ridge(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z,
                           const GibbsConfig& cfg) {
  return run_chain(y, Z, cfg, false);
}

PosteriorDraws gibbs_lasso(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z,
                           const GibbsConfig& cfg) {
  return run_chain(y, Z, cfg, true);
}

PosteriorDraws run_gibbs(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z,
                         const GibbsConfig& cfg) {
  return cfg.prior == Prior::Ridge ? gibbs_ridge(y, Z, cfg) : gibbs_lasso(y, Z, cfg);
}

double gaussian_log_likelihood(const Eigen::VectorXd& y, const Eigen::MatrixXd& Z, double beta0,
                               const Eigen::VectorXd& beta, double sigma_eps_sq) {
  require(sigma_eps_sq > 0.0, ErrorCode::InvalidVariance, "sigma_eps^2 must be > 0");
  require(Z.rows() == y.size() && Z.cols() == beta.size(), ErrorCode::ShapeError,
          "likelihood shapes disagree");
  const double n = static_cast<double>(y.size());
  const double rss = (y.array() - beta0 - (Z * beta).array()).square().sum();
  return -n * 0.5 * std::log(2.0 * std::numbers::pi * sigma_eps_sq) - rss / (2.0 * sigma_eps_sq);
}

}  // namespace rfblt::bayes
