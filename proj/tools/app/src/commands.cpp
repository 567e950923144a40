#include "rfblt_app/commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rfblt/csv.hpp"
#include "rfblt/error.hpp"
#include "rfblt/forecaster.hpp"
#include "rfblt/sueir.hpp"
#include "rfblt_app/model_io.hpp"
#include "rfblt_app/output.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rfblt::app {
namespace {

std::string series_csv(const series::TimeSeries& s) {
  std::ostringstream out;
  csv::write_series(out, s);
  return out.str();
}

std::string path_or_empty(const fs::path& p) { return p.empty() ? std::string() : p.generic_string(); }

json manifest(const Invocation& inv, const std::vector<std::string>& outputs) {
  return json{
      {"tool", "rfblt"},
      {"version", RFBLT_VERSION},
      {"subcommand", inv.config.subcommand},
      {"input", path_or_empty(inv.input)},
      {"model", path_or_empty(inv.model)},
      {"seed", inv.config.seed},
      {"config", to_json(inv.config)},
      {"outputs", outputs},
  };
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidArgument, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, path.string() + ": " + e.what());
  }
}

void require_file(const fs::path& path, const char* what) {
  require(!path.empty(), ErrorCode::InvalidArgument, std::string(what) + " is required");
  require(fs::is_regular_file(path), ErrorCode::InvalidArgument,
          std::string(what) + " not found: " + path.string());
}

std::uint64_t window_seed(std::uint64_t seed, std::size_t window) {
  return RngStream(seed).child({0x77696e646f77ULL, static_cast<std::uint64_t>(window)}).key();
}

std::string forecast_table(const eval::MetricReport& r, std::size_t v,
                           const std::vector<double>& times) {
  csv::Table t;
  const bool intervals = r.lowers.has_value();
  t.header = {"time", "actual", "mean"};
  if (intervals) t.header.insert(t.header.end(), {"lower", "upper"});
  for (Eigen::Index q = 0; q < r.actuals.cols(); ++q) {
    const auto row = static_cast<Eigen::Index>(v);
    std::vector<double> line{times[static_cast<std::size_t>(q)], r.actuals(row, q),
                             r.predictions(row, q)};
    if (intervals) {
      line.push_back((*r.lowers)(row, q));
      line.push_back((*r.uppers)(row, q));
    }
    t.rows.push_back(std::move(line));
  }
  std::ostringstream out;
  csv::write_table(out, t);
  return out.str();
}

std::vector<series::TimeSeries> load_ensemble(const fs::path& input) {
  const fs::path manifest_path = fs::is_directory(input) ? input / "manifest.json" : input;
  require_file(manifest_path, "ensemble manifest");
  const json m = read_json(manifest_path);
  require(m.value("subcommand", "") == "simulate" && m.contains("trajectories"),
          ErrorCode::InvalidArgument, "ensemble input must be a simulate manifest");
  std::vector<series::TimeSeries> runs;
  for (const auto& t : m.at("trajectories")) {
    const fs::path file = manifest_path.parent_path() / t.at("file").get<std::string>();
    require_file(file, "trajectory file");
    runs.push_back(csv::read_series(file));
  }
  return runs;
}

}  // namespace

std::vector<eval::EvaluationCase> ensemble_cases(const std::vector<series::TimeSeries>& runs,
                                                 std::size_t train_end, std::size_t horizon) {
  std::vector<eval::EvaluationCase> cases;
  for (const auto& s : runs) {
    require(train_end >= 2, ErrorCode::InsufficientData, "training prefix needs at least 2 points");
    require(horizon >= 1 && train_end + horizon <= s.size(), ErrorCode::EmptyPlan,
            "m + h exceeds trajectory length " + std::to_string(s.size()));
    const auto y = s.values();
    const auto t = s.times();
    const auto m = static_cast<std::ptrdiff_t>(train_end);
    const auto e = static_cast<std::ptrdiff_t>(train_end + horizon);
    cases.push_back({s.prefix(train_end), std::vector<double>(y.begin() + m, y.begin() + e),
                     std::vector<double>(t.begin() + m, t.begin() + e)});
  }
  return cases;
}

eval::Forecaster make_forecaster(const RunConfig& config) {
  if (config.method == "holt") {
    return [](const series::TimeSeries& train, std::size_t h, std::size_t) {
      return eval::WindowForecast{eval::holt_fit_forecast(train.values(), h), std::nullopt,
                                  std::nullopt};
    };
  }
  ModelConfig model = config.model;
  model.mode = forecast::parse_mode(config.method);
  const double alpha = config.alpha;
  const std::uint64_t seed = config.seed;
  return [model, alpha, seed](const series::TimeSeries& train, std::size_t h, std::size_t window) {
    const auto fitted = forecast::fit(train, model.fit_options(window_seed(seed, window)));
    const auto result = forecast::forecast(fitted, h, alpha);
    return eval::WindowForecast{result.mean, result.lower, result.upper};
  };
}

void cmd_simulate(const Invocation& inv) {
  const RunConfig& c = inv.config;
  c.validate();
  const sim::NoiseSpec noise{c.sigma_zeta, c.seed, c.per_point};
  const auto runs = sim::generate_ensemble(c.sueir, noise, c.count);

  StagedOutput out(inv.output_dir);
  std::vector<std::string> outputs;
  json trajectories = json::array();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    char name[48];
    std::snprintf(name, sizeof(name), "trajectory_%04zu.csv", i);
    out.write(name, series_csv(runs[i]));
    outputs.emplace_back(name);
    trajectories.push_back({{"file", name}, {"index", i}, {"noise_stream", {c.seed, streams::kNoise, i}}});
  }
  json m = manifest(inv, outputs);
  m["trajectories"] = std::move(trajectories);
  out.write("manifest.json", m.dump(2) + "\n");
  out.commit();
}

void cmd_fit(const Invocation& inv) {
  const RunConfig& c = inv.config;
  c.validate();
  require_file(inv.input, "input series");
  const auto series = csv::read_series(inv.input);
  const auto model = forecast::fit(series, c.model.fit_options(c.seed));

  StagedOutput out(inv.output_dir);
  out.write("model.json", model_to_json(model).dump(1) + "\n");
  std::ostringstream draws;
  bayes::write_draws_csv(draws, model.draws);
  out.write("draws.csv", draws.str());
  out.write("manifest.json", manifest(inv, {"model.json", "draws.csv"}).dump(2) + "\n");
  out.commit();
}

void cmd_forecast(const Invocation& inv) {
  const RunConfig& c = inv.config;
  c.validate();
  std::optional<forecast::RfbltModel> model;
  if (!inv.model.empty()) {
    require_file(inv.model, "model file");
    model = model_from_json(read_json(inv.model));
  } else {
    require_file(inv.input, "input series");
    model = forecast::fit(csv::read_series(inv.input), c.model.fit_options(c.seed));
  }
  const auto result = forecast::forecast(*model, c.horizon, c.alpha);

  StagedOutput out(inv.output_dir);
  std::vector<std::string> outputs{"forecast.csv"};
  std::ostringstream f;
  forecast::write_forecast_csv(f, result);
  out.write("forecast.csv", f.str());
  if (c.write_paths) {
    std::ostringstream p;
    forecast::write_sample_paths_csv(p, result);
    out.write("sample_paths.csv", p.str());
    outputs.emplace_back("sample_paths.csv");
  }
  out.write("manifest.json", manifest(inv, outputs).dump(2) + "\n");
  out.commit();
}

void cmd_evaluate(const Invocation& inv) {
  const RunConfig& c = inv.config;
  c.validate();
  require(!inv.input.empty(), ErrorCode::InvalidArgument, "input is required");

  std::vector<eval::EvaluationCase> cases;
  if (c.protocol == "ensemble") {
    cases = ensemble_cases(load_ensemble(inv.input), c.train_end, c.horizon);
  } else {
    require_file(inv.input, "input series");
    const auto series = csv::read_series(inv.input);
    const eval::ExpandingWindowPlan plan{c.train_end, c.horizon, series.size()};
    plan.validate();
    const auto y = series.values();
    const auto t = series.times();
    for (std::size_t v = plan.first_train_end; v + plan.horizon <= series.size(); ++v) {
      const auto a = static_cast<std::ptrdiff_t>(v);
      const auto b = static_cast<std::ptrdiff_t>(v + plan.horizon);
      cases.push_back({series.prefix(v), std::vector<double>(y.begin() + a, y.begin() + b),
                       std::vector<double>(t.begin() + a, t.begin() + b)});
    }
  }

  const auto report = eval::evaluate_cases(cases, c.horizon, make_forecaster(c));

  StagedOutput out(inv.output_dir);
  std::vector<std::string> outputs;
  auto emit = [&](const std::string& name, const csv::Table& table) {
    std::ostringstream s;
    csv::write_table(s, table);
    out.write(name, s.str());
    outputs.push_back(name);
  };

  csv::Table metrics{{"window", "train_end_time", "relative_error"}, {}};
  for (std::size_t v = 0; v < report.windows(); ++v)
    metrics.rows.push_back({static_cast<double>(v), report.train_end_times[v], report.relative_errors[v]});
  emit("metrics.csv", metrics);

  csv::Table mda{{"step", "mda"}, {}};
  for (std::size_t q = 0; q < report.mda.size(); ++q)
    mda.rows.push_back({static_cast<double>(q + 1), report.mda[q]});
  emit("mda.csv", mda);

  if (report.coverage_prob) {
    const auto medians = eval::column_medians(*report.coverage_ranges);
    csv::Table cov{{"step", "coverage_prob", "median_range"}, {}};
    for (std::size_t q = 0; q < report.coverage_prob->size(); ++q)
      cov.rows.push_back({static_cast<double>(q + 1), (*report.coverage_prob)[q], medians[q]});
    emit("coverage.csv", cov);
  }

  for (std::size_t v = 0; v < report.windows(); ++v) {
    char name[64];
    std::snprintf(name, sizeof(name), "forecasts/window_%04zu.csv", v);
    out.write(name, forecast_table(report, v, cases[v].actual_times));
    outputs.emplace_back(name);
  }

  json m = manifest(inv, outputs);
  m["summary"] = {{"windows", report.windows()},
                  {"median_relative_error", report.median_relative_error()}};
  out.write("manifest.json", m.dump(2) + "\n");
  out.commit();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Random-feature Bayesian lasso forecasting on delay embeddings"};
  app.require_subcommand(1);

  std::string input, model_path, output_dir, config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> m, features, samples, burn_in, thin, horizon, smoothing, count, train_end;
  std::optional<double> alpha, noise;
  std::optional<std::string> mode, activation, method, protocol, prior;
  bool normalize = false, paths = false, per_trajectory_noise = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--input", input, "Input series CSV (time,value) or simulate manifest");
    sub->add_option("--output-dir", output_dir, "Directory receiving the outputs")->required();
    sub->add_option("--config", config_path, "JSON run config or a previous manifest");
    sub->add_option("--seed", seed, "Base seed for every random stage");
  };
  auto model_flags = [&](CLI::App* sub) {
    sub->add_option("--m", m, "Embedding dimension");
    sub->add_option("--features", features, "Number of random features (default ceil(rows/2))");
    sub->add_option("--samples", samples, "Gibbs iterations S");
    sub->add_option("--burn-in", burn_in, "Burn-in iterations B");
    sub->add_option("--thin", thin, "Thinning factor");
    sub->add_option("--mode", mode, "rfblt or rfbl");
    sub->add_option("--activation", activation, "fourier, relu, sigmoid, tanh, sine, cosine");
    sub->add_option("--prior", prior, "lasso or ridge");
    sub->add_option("--smoothing-window", smoothing, "Left moving-average width (0 = none)");
    sub->add_flag("--normalize", normalize, "Min-max scale the training window");
  };

  auto* simulate = app.add_subcommand("simulate", "Simulate noisy smoothed SuEIR trajectories");
  common(simulate);
  simulate->add_option("--count", count, "Number of trajectories");
  simulate->add_option("--noise", noise, "Noise level sigma_zeta (fraction of peak)");
  simulate->add_flag("--per-trajectory-noise", per_trajectory_noise,
                     "Draw one zeta per trajectory instead of per time point");

  auto* fit = app.add_subcommand("fit", "Fit a model and export its posterior draws");
  common(fit);
  model_flags(fit);

  auto* fc = app.add_subcommand("forecast", "Fit (or load) a model and forecast");
  common(fc);
  model_flags(fc);
  fc->add_option("--model", model_path, "Previously fitted model.json");
  fc->add_option("--horizon", horizon, "Forecast horizon h");
  fc->add_option("--alpha", alpha, "Credible level alpha");
  fc->add_flag("--paths", paths, "Also write sample_paths.csv");

  auto* ev = app.add_subcommand("evaluate", "Backtest a method and write metrics");
  common(ev);
  model_flags(ev);
  ev->add_option("--horizon", horizon, "Forecast horizon h");
  ev->add_option("--alpha", alpha, "Credible level alpha");
  ev->add_option("--method", method, "rfblt, rfbl or holt");
  ev->add_option("--train-end", train_end, "First training-prefix length (config key m)");
  ev->add_option("--protocol", protocol, "expanding (series CSV) or ensemble (simulate manifest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    Invocation inv;
    RunConfig& c = inv.config;
    if (!config_path.empty()) {
      const json j = read_json(config_path);
      if (j.contains("tool") && j.contains("config")) {
        merge_json(c, j.at("config"));
        if (input.empty() && !j.value("input", "").empty()) input = j.at("input").get<std::string>();
        if (model_path.empty() && !j.value("model", "").empty())
          model_path = j.at("model").get<std::string>();
      } else {
        merge_json(c, j);
      }
    }
    c.subcommand = chosen->get_name();
    if (seed) c.seed = *seed;
    if (m) c.model.embed_dim = *m;
    if (features) c.model.features = *features;
    if (samples) c.model.samples = *samples;
    if (burn_in) c.model.burn_in = *burn_in;
    if (thin) c.model.thin = *thin;
    if (mode) c.model.mode = forecast::parse_mode(*mode);
    if (activation) c.model.activation = features::parse_activation(*activation);
    if (prior) c.model.prior = bayes::parse_prior(*prior);
    if (smoothing) c.model.smoothing_window = *smoothing;
    if (normalize) c.model.normalize = true;
    if (horizon) c.horizon = *horizon;
    if (alpha) c.alpha = *alpha;
    if (method) c.method = *method;
    if (train_end) c.train_end = *train_end;
    if (protocol) c.protocol = *protocol;
    if (count) c.count = *count;
    if (noise) c.sigma_zeta = *noise;
    if (per_trajectory_noise) c.per_point = false;
    if (paths) c.write_paths = true;
    inv.input = input;
    inv.model = model_path;
    inv.output_dir = output_dir;

    if (c.subcommand == "simulate") cmd_simulate(inv);
    else if (c.subcommand == "fit") cmd_fit(inv);
    else if (c.subcommand == "forecast") cmd_forecast(inv);
    else cmd_evaluate(inv);
    return 0;
  } catch (const Error& e) {
    std::cerr << "rfblt: " << e.what() << '\n';
    return e.is_validation() ? 1 : 2;
  } catch (const json::exception& e) {
    std::cerr << "rfblt: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "rfblt: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace rfblt::app
