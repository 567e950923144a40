#include "rfblt_app/config.hpp"

#include <set>
#include <string>

#include "rfblt/error.hpp"

namespace rfblt::app {

using nlohmann::json;

namespace {

template <typename T>
void read_key(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void reject_unknown(const json& j, const std::set<std::string>& known, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      fail(ErrorCode::InvalidArgument, std::string("unknown key '") + key + "' in " + where);
    }
  }
}

json model_to_json_object(const ModelConfig& m) {
  return json{
      {"mode", std::string(forecast::to_string(m.mode))},
      {"embed_dim", m.embed_dim},
      {"features", m.features ? json(*m.features) : json(nullptr)},
      {"feature_policy", m.feature_policy},
      {"feature_multiplier", m.feature_multiplier},
      {"smoothing_window", m.smoothing_window},
      {"activation", std::string(features::to_string(m.activation))},
      {"weight_law", app::to_json(m.weight_law)},
      {"bias_law", app::to_json(m.bias_law)},
      {"samples", m.samples},
      {"burn_in", m.burn_in},
      {"thin", m.thin},
      {"prior", std::string(bayes::to_string(m.prior))},
      {"normalize", m.normalize},
  };
}

void merge_model(ModelConfig& m, const json& j) {
  reject_unknown(j,
                 {"mode", "embed_dim", "features", "feature_policy", "feature_multiplier",
                  "smoothing_window", "activation", "weight_law", "bias_law", "samples", "burn_in",
                  "thin", "prior", "normalize"},
                 "model");
  if (j.contains("mode")) m.mode = forecast::parse_mode(j.at("mode").get<std::string>());
  read_key(j, "embed_dim", m.embed_dim);
  if (j.contains("features")) {
    const auto& f = j.at("features");
    m.features = f.is_null() ? std::nullopt : std::optional<std::size_t>(f.get<std::size_t>());
  }
  read_key(j, "feature_policy", m.feature_policy);
  read_key(j, "feature_multiplier", m.feature_multiplier);
  read_key(j, "smoothing_window", m.smoothing_window);
  if (j.contains("activation"))
    m.activation = features::parse_activation(j.at("activation").get<std::string>());
  if (j.contains("weight_law")) m.weight_law = distribution_from_json(j.at("weight_law"));
  if (j.contains("bias_law")) m.bias_law = distribution_from_json(j.at("bias_law"));
  read_key(j, "samples", m.samples);
  read_key(j, "burn_in", m.burn_in);
  read_key(j, "thin", m.thin);
  if (j.contains("prior")) m.prior = bayes::parse_prior(j.at("prior").get<std::string>());
  read_key(j, "normalize", m.normalize);
}

json sueir_to_json(const sim::SueirParams& p) {
  return json{{"beta", p.beta}, {"sigma", p.sigma}, {"gamma", p.gamma}, {"mu", p.mu},
              {"S0", p.S0},     {"E0", p.E0},       {"I0", p.I0},       {"R0", p.R0},
              {"t_end", p.t_end}, {"dt_out", p.dt_out}, {"step", p.step}};
}

void merge_sueir(sim::SueirParams& p, const json& j) {
  reject_unknown(j, {"beta", "sigma", "gamma", "mu", "S0", "E0", "I0", "R0", "t_end", "dt_out", "step"},
                 "sueir");
  read_key(j, "beta", p.beta);
  read_key(j, "sigma", p.sigma);
  read_key(j, "gamma", p.gamma);
  read_key(j, "mu", p.mu);
  read_key(j, "S0", p.S0);
  read_key(j, "E0", p.E0);
  read_key(j, "I0", p.I0);
  read_key(j, "R0", p.R0);
  read_key(j, "t_end", p.t_end);
  read_key(j, "dt_out", p.dt_out);
  read_key(j, "step", p.step);
}

}  // namespace

forecast::FitOptions ModelConfig::fit_options(std::uint64_t seed) const {
  forecast::FitOptions o;
  o.mode = mode;
  o.embed_dim = embed_dim;
  o.n_features = features;
  if (feature_policy == "half") {
    o.feature_policy = features::FeatureCountPolicy::half();
  } else if (feature_policy == "sqrt") {
    o.feature_policy = features::FeatureCountPolicy::sqrt_n();
  } else if (feature_policy == "multiplier") {
    o.feature_policy = features::FeatureCountPolicy::multiplier(feature_multiplier);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown feature policy '" + feature_policy + "'");
  }
  o.smoothing = smoothing_window == 0 ? series::Smoothing::pass_through()
                                      : series::Smoothing::moving_average(smoothing_window);
  o.weight_law = weight_law;
  o.bias_law = bias_law;
  o.activation = activation;
  o.gibbs.n_samples = samples;
  o.gibbs.burn_in = burn_in;
  o.gibbs.thin = thin;
  o.gibbs.prior = prior;
  o.normalize = normalize;
  o.seed = seed;
  return o;
}

void RunConfig::validate() const {
  const auto fit = model.fit_options(seed);
  fit.gibbs.validate();
  fit.weight_law.validate();
  fit.bias_law.validate();
  require(model.embed_dim >= 1, ErrorCode::InvalidArgument, "embedding dimension must be >= 1");
  require(horizon >= 1, ErrorCode::InvalidArgument, "horizon must be >= 1");
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
  require(method == "rfblt" || method == "rfbl" || method == "holt", ErrorCode::InvalidArgument,
          "method must be rfblt, rfbl or holt");
  require(protocol == "expanding" || protocol == "ensemble", ErrorCode::InvalidArgument,
          "protocol must be expanding or ensemble");
  if (subcommand == "simulate") {
    sueir.validate();
    require(count >= 1, ErrorCode::InvalidArgument, "count must be >= 1");
    require(sigma_zeta >= 0.0, ErrorCode::InvalidArgument, "noise level must be >= 0");
  }
  if (subcommand == "evaluate") {
    require(train_end >= 1, ErrorCode::EmptyPlan, "evaluate needs --train-end (m)");
    require(train_end >= 2, ErrorCode::InsufficientData, "evaluate needs m (first training end) >= 2");
  }
}

json to_json(const features::DistributionSpec& spec) {
  return json{{"family", std::string(features::to_string(spec.family))}, {"a", spec.a}, {"b", spec.b}};
}

features::DistributionSpec distribution_from_json(const json& j) {
  reject_unknown(j, {"family", "a", "b"}, "distribution");
  auto spec = features::DistributionSpec::defaults(
      features::parse_family(j.at("family").get<std::string>()));
  read_key(j, "a", spec.a);
  read_key(j, "b", spec.b);
  spec.validate();
  return spec;
}

json to_json(const RunConfig& c) {
  return json{
      {"subcommand", c.subcommand},
      {"seed", c.seed},
      {"model", model_to_json_object(c.model)},
      {"h", c.horizon},
      {"alpha", c.alpha},
      {"m", c.train_end},
      {"method", c.method},
      {"protocol", c.protocol},
      {"count", c.count},
      {"sigma_zeta", c.sigma_zeta},
      {"per_point", c.per_point},
      {"sueir", sueir_to_json(c.sueir)},
      {"write_paths", c.write_paths},
  };
}

void merge_json(RunConfig& c, const json& j) {
  require(j.is_object(), ErrorCode::InvalidArgument, "run config must be a JSON object");
  reject_unknown(j,
                 {"subcommand", "seed", "model", "h", "alpha", "m", "method", "protocol", "count",
                  "sigma_zeta", "per_point", "sueir", "write_paths"},
                 "run config");
  try {
    read_key(j, "subcommand", c.subcommand);
    read_key(j, "seed", c.seed);
    if (j.contains("model")) merge_model(c.model, j.at("model"));
    read_key(j, "h", c.horizon);
    read_key(j, "alpha", c.alpha);
    read_key(j, "m", c.train_end);
    read_key(j, "method", c.method);
    read_key(j, "protocol", c.protocol);
    read_key(j, "count", c.count);
    read_key(j, "sigma_zeta", c.sigma_zeta);
    read_key(j, "per_point", c.per_point);
    if (j.contains("sueir")) merge_sueir(c.sueir, j.at("sueir"));
    read_key(j, "write_paths", c.write_paths);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("bad run config: ") + e.what());
  }
}

}  // namespace rfblt::app
