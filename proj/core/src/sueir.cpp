#include "rfblt/sueir.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rfblt/error.hpp"

namespace rfblt::sim {

void SueirParams::validate() const {
  require(beta > 0.0 && sigma > 0.0 && gamma > 0.0, ErrorCode::InvalidArgument,
          "SuEIR rates must be > 0");
  require(mu > 0.0 && mu <= 1.0, ErrorCode::InvalidArgument, "discovery rate mu must be in (0, 1]");
  require(S0 >= 0.0 && E0 >= 0.0 && I0 >= 0.0 && R0 >= 0.0, ErrorCode::InvalidArgument,
          "initial compartments must be >= 0");
  require(initial_population() > 0.0, ErrorCode::InvalidArgument, "population must be > 0");
  require(t_end > 0.0 && dt_out > 0.0 && step > 0.0, ErrorCode::InvalidArgument,
          "t_end, dt_out and step must be > 0");
  const double ratio = dt_out / step;
  require(std::abs(ratio - std::round(ratio)) < 1e-9 * ratio, ErrorCode::InvalidArgument,
          "integration step must divide the output step");
}

Compartments sueir_rates(const SueirParams& p, const Compartments& x) noexcept {
  const double n = x.total();
  const double infection = p.beta * (x.I + x.E) * x.S / n;
  return {-infection, infection - p.sigma * x.E, p.mu * p.sigma * x.E - p.gamma * x.I,
          p.gamma * x.I};
}

namespace {

Compartments axpy(const Compartments& x, double a, const Compartments& k) noexcept {
  return {x.S + a * k.S, x.E + a * k.E, x.I + a * k.I, x.R + a * k.R};
}

Compartments rk4_step(const SueirParams& p, const Compartments& x, double h) noexcept {
  const auto k1 = sueir_rates(p, x);
  const auto k2 = sueir_rates(p, axpy(x, 0.5 * h, k1));
  const auto k3 = sueir_rates(p, axpy(x, 0.5 * h, k2));
  const auto k4 = sueir_rates(p, axpy(x, h, k3));
  const double w = h / 6.0;
  return {x.S + w * (k1.S + 2.0 * k2.S + 2.0 * k3.S + k4.S),
          x.E + w * (k1.E + 2.0 * k2.E + 2.0 * k3.E + k4.E),
          x.I + w * (k1.I + 2.0 * k2.I + 2.0 * k3.I + k4.I),
          x.R + w * (k1.R + 2.0 * k2.R + 2.0 * k3.R + k4.R)};
}

void clamp_or_fail(double& v, double t, const char* name) {
  if (v >= 0.0) return;
  if (v < -1e-9) {
    fail(ErrorCode::IntegrationError,
         std::string("compartment ") + name + " went negative at t=" + std::to_string(t));
  }
  v = 0.0;
}

}  // namespace

SueirRun integrate_sueir(const SueirParams& params) {
  params.validate();
  const auto substeps = static_cast<std::size_t>(std::llround(params.dt_out / params.step));
  const auto outputs = static_cast<std::size_t>(std::floor(params.t_end / params.dt_out + 1e-9));

  SueirRun run;
  run.initial_population = params.initial_population();
  run.times.reserve(outputs + 1);
  run.states.reserve(outputs + 1);

  Compartments x{params.S0, params.E0, params.I0, params.R0};
  run.times.push_back(0.0);
  run.states.push_back(x);
  for (std::size_t k = 1; k <= outputs; ++k) {
    for (std::size_t j = 0; j < substeps; ++j) {
      x = rk4_step(params, x, params.step);
      const double t = params.dt_out * static_cast<double>(k - 1) +
                       params.step * static_cast<double>(j + 1);
      clamp_or_fail(x.S, t, "S");
      clamp_or_fail(x.E, t, "E");
      clamp_or_fail(x.I, t, "I");
      clamp_or_fail(x.R, t, "R");
    }
    run.times.push_back(params.dt_out * static_cast<double>(k));
    run.states.push_back(x);
  }
  return run;
}

series::TimeSeries SueirRun::compartment(double Compartments::*field, const char* name) const {
  std::vector<double> values(states.size());
  std::transform(states.begin(), states.end(), values.begin(),
                 [field](const Compartments& c) { return c.*field; });
  return series::TimeSeries(times, std::move(values), name);
}

series::TimeSeries infectious_proportion(const SueirRun& run) {
  std::vector<double> values(run.states.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    values[i] = run.states[i].I / run.initial_population;
  return series::TimeSeries(run.times, std::move(values), "infectious_proportion");
}

void NoiseSpec::validate() const {
  require(sigma_zeta >= 0.0 && std::isfinite(sigma_zeta), ErrorCode::InvalidArgument,
          "noise level must be >= 0");
}

series::TimeSeries add_noise(const series::TimeSeries& clean, double sigma_zeta, bool per_point,
                             RngStream rng) {
  require(sigma_zeta >= 0.0 && std::isfinite(sigma_zeta), ErrorCode::InvalidArgument,
          "noise level must be >= 0");
  const auto y = clean.values();
  double peak = 0.0;
  for (double v : y) peak = std::max(peak, std::abs(v));
  std::vector<double> noisy(y.begin(), y.end());
  if (sigma_zeta == 0.0) {
    return series::TimeSeries({clean.times().begin(), clean.times().end()}, std::move(noisy),
                              clean.name());
  }
  std::normal_distribution<double> zeta(0.0, sigma_zeta);
  const double shared = per_point ? 0.0 : zeta(rng);
  for (double& v : noisy) v += (per_point ? zeta(rng) : shared) * peak;
  return series::TimeSeries({clean.times().begin(), clean.times().end()}, std::move(noisy),
                            clean.name());
}

series::TimeSeries add_noise(const series::TimeSeries& clean, const NoiseSpec& spec) {
  spec.validate();
  return add_noise(clean, spec.sigma_zeta, spec.per_point,
                   RngStream(spec.seed).child(streams::kNoise));
}

series::TimeSeries smooth_7day(const series::TimeSeries& series) {
  const std::size_t window = std::min<std::size_t>(7, series.size());
  return series::TimeSeries({series.times().begin(), series.times().end()},
                            series::left_moving_average(series.values(), window), series.name());
}

std::vector<series::TimeSeries> generate_ensemble(const SueirParams& params, const NoiseSpec& spec,
                                                  std::size_t count) {
  require(count >= 1, ErrorCode::InvalidArgument, "ensemble needs at least one trajectory");
  spec.validate();
  const auto clean = infectious_proportion(integrate_sueir(params));
  const RngStream base = RngStream(spec.seed).child(streams::kNoise);
  std::vector<series::TimeSeries> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto noisy = add_noise(clean, spec.sigma_zeta, spec.per_point, base.child(i));
    out.push_back(smooth_7day(noisy));
  }
  return out;
}

}  // namespace rfblt::sim
