#include <doctest.h>

#include "rfblt/random_features.hpp"
#include "test_support.hpp"

using namespace rfblt;
using namespace rfblt::features;
using rfblt::testing::CaseRng;
using rfblt::testing::kPropertyCases;

namespace {

FeatureMap random_map(CaseRng& rng, Activation act, std::size_t m, std::size_t d) {
  const DistributionSpec laws[] = {DistributionSpec::normal(rng.uniform(-1, 1), rng.uniform(0.1, 3)),
                                   DistributionSpec::cauchy(), DistributionSpec::uniform(-2, 2),
                                   DistributionSpec::lognormal(), DistributionSpec::exponential(2),
                                   DistributionSpec::bernoulli(0.4)};
  const auto& w = laws[rng.integer(0, 5)];
  return sample_feature_map(m, d, w, DistributionSpec::defaults(Family::Uniform), act, rng.stream());
}

Eigen::MatrixXd random_design(CaseRng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd X(rows, cols);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.uniform(-50, 50);
  return X;
}

}  // namespace

TEST_CASE("property: activation ranges") {
  const Activation acts[] = {Activation::Fourier, Activation::Relu, Activation::Sigmoid,
                             Activation::Tanh,    Activation::Sine, Activation::Cosine};
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(5000 + static_cast<std::uint64_t>(c));
    const Activation act = acts[c % 6];
    const std::size_t m = rng.integer(1, 12), d = rng.integer(1, 200);
    const auto map = random_map(rng, act, m, d);
    const Eigen::ArrayXXd z = map.transform_batch(random_design(rng, 20, static_cast<Eigen::Index>(m))).array();
    REQUIRE(z.allFinite());
    switch (act) {
      case Activation::Fourier:
        REQUIRE((z.abs() <= std::sqrt(2.0 / static_cast<double>(d)) * (1 + 1e-15)).all());
        break;
      case Activation::Relu:
        REQUIRE((z >= 0.0).all());
        break;
      case Activation::Sigmoid:
        // Saturation at large |pre-activation| rounds to the endpoints.
        REQUIRE((z >= 0.0).all());
        REQUIRE((z <= 1.0).all());
        break;
      case Activation::Tanh:
        REQUIRE((z.abs() <= 1.0).all());
        break;
      case Activation::Sine:
      case Activation::Cosine:
        REQUIRE((z.abs() <= 1.0).all());
        break;
    }
  }
}

TEST_CASE("property: sigmoid and tanh are open-interval on moderate inputs") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(5500 + static_cast<std::uint64_t>(c));
    const auto x = rng.uniform(-30, 30);
    const FeatureMap sig(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1), Activation::Sigmoid);
    const FeatureMap th(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Zero(1), Activation::Tanh);
    const double s = sig.transform(std::vector<double>{x})(0);
    const double t = th.transform(std::vector<double>{x * 0.5})(0);
    REQUIRE(s > 0.0);
    REQUIRE(s < 1.0);
    REQUIRE(t > -1.0);
    REQUIRE(t < 1.0);
  }
}

TEST_CASE("property: transform is pure and batch-consistent") {
  for (int c = 0; c < kPropertyCases; ++c) {
    CaseRng rng(6000 + static_cast<std::uint64_t>(c));
    const std::size_t m = rng.integer(1, 10), d = rng.integer(1, 60);
    const std::uint64_t seed = rng.stream();
    const auto a = sample_feature_map(m, d, DistributionSpec::normal(), DistributionSpec::defaults(Family::Uniform),
                                      Activation::Fourier, seed);
    const auto b = sample_feature_map(m, d, DistributionSpec::normal(), DistributionSpec::defaults(Family::Uniform),
                                      Activation::Fourier, seed);
    REQUIRE(a.weights() == b.weights());
    const auto X = random_design(rng, 5, static_cast<Eigen::Index>(m));
    const Eigen::MatrixXd Z = a.transform_batch(X);
    for (Eigen::Index r = 0; r < X.rows(); ++r) {
      const Eigen::VectorXd row = X.row(r).transpose();
      const Eigen::VectorXd z1 = a.transform(row);
      REQUIRE(z1 == b.transform(row));
      REQUIRE((Z.row(r).transpose() - z1).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
}
