#pragma once

#include <filesystem>
#include <vector>

#include "rfblt/evaluation.hpp"
#include "rfblt/series.hpp"
#include "rfblt_app/config.hpp"

namespace rfblt::app {

struct Invocation {
  RunConfig config;
  std::filesystem::path input;
  std::filesystem::path model;
  std::filesystem::path output_dir;
};

void cmd_simulate(const Invocation& inv);
void cmd_fit(const Invocation& inv);
void cmd_forecast(const Invocation& inv);
void cmd_evaluate(const Invocation& inv);

/// Forecaster for `config.method`. rfblt/rfbl fit a fresh model per window
/// with a seed derived from (config.seed, window).
eval::Forecaster make_forecaster(const RunConfig& config);

/// Ensemble protocol: each trajectory trains on its first `train_end` points
/// and is scored on the next `horizon`.
std::vector<eval::EvaluationCase> ensemble_cases(const std::vector<series::TimeSeries>& runs,
                                                 std::size_t train_end, std::size_t horizon);

/// Parses arguments, runs the subcommand and maps failures to exit codes:
/// 0 success, 1 validation, 2 runtime.
int run_cli(int argc, char** argv);

}  // namespace rfblt::app
