#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "rfblt/forecaster.hpp"
#include "rfblt/gibbs.hpp"
#include "rfblt/random_features.hpp"
#include "rfblt/sueir.hpp"

namespace rfblt::app {

struct ModelConfig {
  forecast::Mode mode = forecast::Mode::Rfblt;
  std::size_t embed_dim = 9;
  std::optional<std::size_t> features;
  std::string feature_policy = "half";  // half | sqrt | multiplier
  double feature_multiplier = 1.0;
  /// 0 = pass-through, otherwise a left moving average of this width.
  std::size_t smoothing_window = 0;
  features::Activation activation = features::Activation::Fourier;
  features::DistributionSpec weight_law = features::DistributionSpec::normal(0.0, 1.0);
  features::DistributionSpec bias_law =
      features::DistributionSpec::defaults(features::Family::Uniform);
  std::size_t samples = 2000;
  std::size_t burn_in = 1000;
  std::size_t thin = 5;
  bayes::Prior prior = bayes::Prior::Lasso;
  bool normalize = false;

  forecast::FitOptions fit_options(std::uint64_t seed) const;
};

/// Everything a subcommand needs. Serialised verbatim into each manifest so
/// a run can be replayed from it.
struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 0;
  ModelConfig model;
  std::size_t horizon = 7;
  double alpha = 0.05;

  // evaluate
  std::size_t train_end = 0;  // "m": first training-prefix length
  std::string method = "rfblt";       // rfblt | rfbl | holt
  std::string protocol = "expanding";  // expanding | ensemble

  // simulate
  std::size_t count = 1;
  double sigma_zeta = 0.1;
  bool per_point = true;
  sim::SueirParams sueir;

  // forecast
  bool write_paths = false;

  void validate() const;
};

nlohmann::json to_json(const RunConfig& config);
/// Overlays the keys present in `j` onto `config`; unknown keys are rejected.
void merge_json(RunConfig& config, const nlohmann::json& j);

nlohmann::json to_json(const features::DistributionSpec& spec);
features::DistributionSpec distribution_from_json(const nlohmann::json& j);

}  // namespace rfblt::app
