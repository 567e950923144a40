#include "rfblt/random_features.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "rfblt/csv.hpp"
#include "rfblt/error.hpp"

namespace rfblt::features {
namespace {

template <typename Dist>
void fill_with(Dist dist, double* out, std::size_t count, RngStream& rng) {
  for (std::size_t i = 0; i < count; ++i) out[i] = static_cast<double>(dist(rng));
}

void fill(const DistributionSpec& spec, double* out, std::size_t count, RngStream& rng) {
  switch (spec.family) {
    case Family::Normal:
      return fill_with(std::normal_distribution<double>(spec.a, spec.b), out, count, rng);
    case Family::Uniform:
      return fill_with(std::uniform_real_distribution<double>(spec.a, spec.b), out, count, rng);
    case Family::Cauchy:
      return fill_with(std::cauchy_distribution<double>(spec.a, spec.b), out, count, rng);
    case Family::Exponential:
      return fill_with(std::exponential_distribution<double>(spec.a), out, count, rng);
    case Family::Bernoulli:
      return fill_with(std::bernoulli_distribution(spec.a), out, count, rng);
    case Family::Lognormal:
      return fill_with(std::lognormal_distribution<double>(spec.a, spec.b), out, count, rng);
  }
}

}  // namespace

std::string_view to_string(Activation a) noexcept {
  switch (a) {
    case Activation::Fourier: return "fourier";
    case Activation::Relu: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Sine: return "sine";
    case Activation::Cosine: return "cosine";
  }
  return "unknown";
}

Activation parse_activation(std::string_view name) {
  for (auto a : {Activation::Fourier, Activation::Relu, Activation::Sigmoid, Activation::Tanh,
                 Activation::Sine, Activation::Cosine}) {
    if (to_string(a) == name) return a;
  }
  fail(ErrorCode::InvalidArgument, "unknown activation '" + std::string(name) + "'");
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Normal: return "normal";
    case Family::Uniform: return "uniform";
    case Family::Cauchy: return "cauchy";
    case Family::Exponential: return "exponential";
    case Family::Bernoulli: return "bernoulli";
    case Family::Lognormal: return "lognormal";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (auto f : {Family::Normal, Family::Uniform, Family::Cauchy, Family::Exponential,
                 Family::Bernoulli, Family::Lognormal}) {
    if (to_string(f) == name) return f;
  }
  fail(ErrorCode::InvalidDistribution, "unknown distribution family '" + std::string(name) + "'");
}

DistributionSpec DistributionSpec::normal(double mean, double sd) {
  return {Family::Normal, mean, sd};
}
DistributionSpec DistributionSpec::uniform(double low, double high) {
  return {Family::Uniform, low, high};
}
DistributionSpec DistributionSpec::cauchy(double location, double scale) {
  return {Family::Cauchy, location, scale};
}
DistributionSpec DistributionSpec::exponential(double rate) {
  return {Family::Exponential, rate, 0.0};
}
DistributionSpec DistributionSpec::bernoulli(double p) { return {Family::Bernoulli, p, 0.0}; }
DistributionSpec DistributionSpec::lognormal(double log_mean, double log_sd) {
  return {Family::Lognormal, log_mean, log_sd};
}

DistributionSpec DistributionSpec::defaults(Family family) {
  switch (family) {
    case Family::Normal: return normal();
    case Family::Uniform: return uniform(0.0, 2.0 * std::numbers::pi);
    case Family::Cauchy: return cauchy();
    case Family::Exponential: return exponential();
    case Family::Bernoulli: return bernoulli();
    case Family::Lognormal: return lognormal();
  }
  return normal();
}

void DistributionSpec::validate() const {
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::InvalidDistribution, describe() + ": " + why);
  };
  if (!std::isfinite(a) || !std::isfinite(b)) bad("parameters must be finite");
  switch (family) {
    case Family::Normal:
    case Family::Cauchy:
    case Family::Lognormal:
      if (!(b > 0.0)) bad("scale must be > 0");
      break;
    case Family::Uniform:
      if (!(a < b)) bad("low must be < high");
      break;
    case Family::Exponential:
      if (!(a > 0.0)) bad("rate must be > 0");
      break;
    case Family::Bernoulli:
      if (!(a >= 0.0 && a <= 1.0)) bad("p must be in [0, 1]");
      break;
  }
}

double DistributionSpec::sample(RngStream& rng) const {
  double out = 0.0;
  fill(*this, &out, 1, rng);
  return out;
}

std::string DistributionSpec::describe() const {
  std::string s(to_string(family));
  s += '(' + csv::format_double(a);
  if (family != Family::Exponential && family != Family::Bernoulli) s += ", " + csv::format_double(b);
  return s + ')';
}

FeatureMap::FeatureMap(Eigen::MatrixXd weights, Eigen::VectorXd biases, Activation activation)
    : weights_(std::move(weights)), biases_(std::move(biases)), activation_(activation) {
  require(weights_.rows() >= 1 && weights_.cols() >= 1, ErrorCode::ShapeError,
          "feature map needs m >= 1 and D >= 1");
  require(biases_.size() == weights_.cols(), ErrorCode::ShapeError,
          "bias length does not match feature count");
  require(weights_.allFinite() && biases_.allFinite(), ErrorCode::NumericalError,
          "feature map has non-finite entries");
}

void FeatureMap::activate(Eigen::Ref<Eigen::ArrayXXd> pre) const {
  switch (activation_) {
    case Activation::Fourier:
      pre = std::sqrt(2.0 / static_cast<double>(n_features())) * pre.cos();
      break;
    case Activation::Relu:
      pre = pre.max(0.0);
      break;
    case Activation::Sigmoid:
      pre = 1.0 / (1.0 + (-pre).exp());
      break;
    case Activation::Tanh:
      pre = pre.tanh();
      break;
    case Activation::Sine:
      pre = pre.sin();
      break;
    case Activation::Cosine:
      pre = pre.cos();
      break;
  }
}

Eigen::VectorXd FeatureMap::transform(std::span<const double> x) const {
  require(x.size() == input_dim(), ErrorCode::ShapeError,
          "input length " + std::to_string(x.size()) + " != " + std::to_string(input_dim()));
  return transform(Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())));
}

Eigen::VectorXd FeatureMap::transform(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  require(static_cast<std::size_t>(x.size()) == input_dim(), ErrorCode::ShapeError,
          "input length " + std::to_string(x.size()) + " != " + std::to_string(input_dim()));
  Eigen::ArrayXXd pre = (weights_.transpose() * x + biases_).array();
  activate(pre);
  return pre.matrix();
}

Eigen::MatrixXd FeatureMap::transform_batch(const Eigen::Ref<const Eigen::MatrixXd>& design) const {
  require(static_cast<std::size_t>(design.cols()) == input_dim(), ErrorCode::ShapeError,
          "design has " + std::to_string(design.cols()) + " columns, map expects " +
              std::to_string(input_dim()));
  Eigen::ArrayXXd pre = ((design * weights_).rowwise() + biases_.transpose()).array();
  activate(pre);
  return pre.matrix();
}

void FeatureMap::dump(std::ostream& out) const {
  out << "rfblt-feature-map " << input_dim() << ' ' << n_features() << ' '
      << to_string(activation_) << '\n';
  for (Eigen::Index i = 0; i < weights_.rows(); ++i) {
    for (Eigen::Index j = 0; j < weights_.cols(); ++j)
      out << (j ? " " : "") << csv::format_double(weights_(i, j));
    out << '\n';
  }
  for (Eigen::Index j = 0; j < biases_.size(); ++j)
    out << (j ? " " : "") << csv::format_double(biases_(j));
  out << '\n';
}

FeatureMap FeatureMap::load(std::istream& in) {
  std::string magic, act;
  std::size_t m = 0, d = 0;
  in >> magic >> m >> d >> act;
  require(in.good() && magic == "rfblt-feature-map", ErrorCode::InvalidArgument,
          "not a feature map dump");
  Eigen::MatrixXd w(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(d));
  Eigen::VectorXd b(static_cast<Eigen::Index>(d));
  std::string tok;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      in >> tok;
      w(i, j) = csv::parse_double(tok);
    }
  for (Eigen::Index j = 0; j < b.size(); ++j) {
    in >> tok;
    b(j) = csv::parse_double(tok);
  }
  require(!in.fail(), ErrorCode::InvalidArgument, "truncated feature map dump");
  return FeatureMap(std::move(w), std::move(b), parse_activation(act));
}

FeatureMap sample_feature_map(std::size_t input_dim, std::size_t n_features,
                              const DistributionSpec& weight_law, const DistributionSpec& bias_law,
                              Activation activation, RngStream rng) {
  require(input_dim >= 1 && n_features >= 1, ErrorCode::InvalidArgument,
          "feature map needs m >= 1 and D >= 1");
  weight_law.validate();
  bias_law.validate();
  Eigen::MatrixXd w(static_cast<Eigen::Index>(input_dim), static_cast<Eigen::Index>(n_features));
  Eigen::VectorXd b(static_cast<Eigen::Index>(n_features));
  fill(weight_law, w.data(), input_dim * n_features, rng);
  fill(bias_law, b.data(), n_features, rng);
  return FeatureMap(std::move(w), std::move(b), activation);
}

FeatureMap sample_feature_map(std::size_t input_dim, std::size_t n_features,
                              const DistributionSpec& weight_law, const DistributionSpec& bias_law,
                              Activation activation, std::uint64_t seed) {
  return sample_feature_map(input_dim, n_features, weight_law, bias_law, activation,
                            RngStream(seed).child(streams::kFeatureMap));
}

std::size_t default_feature_count(std::size_t n_train, FeatureCountPolicy policy) {
  require(n_train >= 1, ErrorCode::InsufficientData, "feature count needs n >= 1");
  const double n = static_cast<double>(n_train);
  double d = 0.0;
  switch (policy.kind) {
    case FeatureCountPolicy::Kind::HalfN:
      return (n_train + 1) / 2;
    case FeatureCountPolicy::Kind::SqrtN:
      d = std::ceil(std::sqrt(n));
      break;
    case FeatureCountPolicy::Kind::Multiplier:
      require(policy.value > 0.0, ErrorCode::InvalidArgument, "feature multiplier must be > 0");
      d = std::ceil(policy.value * n);
      break;
    case FeatureCountPolicy::Kind::Fixed:
      require(policy.value >= 1.0, ErrorCode::InvalidArgument, "fixed feature count must be >= 1");
      d = policy.value;
      break;
  }
  return static_cast<std::size_t>(d);
}

}  // namespace rfblt::features
