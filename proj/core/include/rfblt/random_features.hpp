#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "rfblt/rng.hpp"

namespace rfblt::features {

enum class Activation { Fourier, Relu, Sigmoid, Tanh, Sine, Cosine };

std::string_view to_string(Activation a) noexcept;
Activation parse_activation(std::string_view name);

enum class Family { Normal, Uniform, Cauchy, Exponential, Bernoulli, Lognormal };

std::string_view to_string(Family f) noexcept;
Family parse_family(std::string_view name);

/// A sampling law for the random weights or biases.
///
/// Parameters per family: normal(mean, sd), uniform(low, high),
/// cauchy(location, scale), exponential(rate), bernoulli(p) on {0, 1},
/// lognormal(log-mean, log-sd). Unused parameters are ignored.
struct DistributionSpec {
  Family family = Family::Normal;
  double a = 0.0;
  double b = 1.0;

  static DistributionSpec normal(double mean = 0.0, double sd = 1.0);
  static DistributionSpec uniform(double low, double high);
  static DistributionSpec cauchy(double location = 0.0, double scale = 1.0);
  static DistributionSpec exponential(double rate = 1.0);
  static DistributionSpec bernoulli(double p = 0.5);
  static DistributionSpec lognormal(double log_mean = 0.0, double log_sd = 1.0);
  /// Documented default parameters for a family; uniform defaults to [0, 2pi].
  static DistributionSpec defaults(Family family);

  /// Throws InvalidDistribution when the parameters are outside the family's domain.
  void validate() const;
  double sample(RngStream& rng) const;
  std::string describe() const;
};

/// Frozen random feature map z = activation(x^T W + b^T).
class FeatureMap {
 public:
  FeatureMap(Eigen::MatrixXd weights, Eigen::VectorXd biases, Activation activation);

  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
  std::size_t n_features() const noexcept { return static_cast<std::size_t>(weights_.cols()); }
  Activation activation() const noexcept { return activation_; }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  const Eigen::VectorXd& biases() const noexcept { return biases_; }

  Eigen::VectorXd transform(std::span<const double> x) const;
  Eigen::VectorXd transform(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// Row-wise transform of a design matrix (rows x input_dim) -> (rows x D).
  Eigen::MatrixXd transform_batch(const Eigen::Ref<const Eigen::MatrixXd>& design) const;

  /// Applies the activation to pre-activation values in place.
  void activate(Eigen::Ref<Eigen::ArrayXXd> pre) const;

  /// Flat text dump: header line, W row-major, b, then metadata.
  void dump(std::ostream& out) const;
  static FeatureMap load(std::istream& in);

 private:
  Eigen::MatrixXd weights_;
  Eigen::VectorXd biases_;
  Activation activation_;
};

/// W entries i.i.d. from `weight_law`, b entries i.i.d. from `bias_law`.
/// Weights are drawn column-major (one feature at a time), then biases.
FeatureMap sample_feature_map(std::size_t input_dim, std::size_t n_features,
                              const DistributionSpec& weight_law, const DistributionSpec& bias_law,
                              Activation activation, std::uint64_t seed);

FeatureMap sample_feature_map(std::size_t input_dim, std::size_t n_features,
                              const DistributionSpec& weight_law, const DistributionSpec& bias_law,
                              Activation activation, RngStream rng);

struct FeatureCountPolicy {
  enum class Kind { HalfN, SqrtN, Multiplier, Fixed };
  Kind kind = Kind::HalfN;
  double value = 0.0;  // multiplier or fixed count

  static FeatureCountPolicy half() { return {}; }
  static FeatureCountPolicy sqrt_n() { return {Kind::SqrtN, 0.0}; }
  static FeatureCountPolicy multiplier(double k) { return {Kind::Multiplier, k}; }
  static FeatureCountPolicy fixed(std::size_t d) { return {Kind::Fixed, static_cast<double>(d)}; }
};

/// ceil(n/2) by default; ceil(sqrt(n)), ceil(k n) or a fixed count otherwise.
std::size_t default_feature_count(std::size_t n_train,
                                  FeatureCountPolicy policy = FeatureCountPolicy::half());

}  // namespace rfblt::features
