#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rfblt/rng.hpp"
#include "rfblt/series.hpp"

namespace rfblt::sim {

/// S-mu-E-I-R compartmental model:
///   dS/dt = -beta (I + E) S / N
///   dE/dt =  beta (I + E) S / N - sigma E
///   dI/dt =  mu sigma E - gamma I
///   dR/dt =  gamma I
/// with N = S + E + I + R. Undiscovered infections (1 - mu) leave the system,
/// so the total shrinks at rate (1 - mu) sigma E.
struct SueirParams {
  double beta = 3.0 / 14.0;
  double sigma = 1.0 / 4.0;
  double gamma = 1.0 / 14.0;
  double mu = 3.0 / 4.0;
  double S0 = 1e6;
  double E0 = 0.0;
  double I0 = 1.0;
  double R0 = 0.0;
  double t_end = 180.0;
  double dt_out = 1.0;
  double step = 0.05;  // fixed RK4 step, must divide dt_out

  double initial_population() const noexcept { return S0 + E0 + I0 + R0; }
  void validate() const;
};

struct Compartments {
  double S = 0.0;
  double E = 0.0;
  double I = 0.0;
  double R = 0.0;

  double total() const noexcept { return S + E + I + R; }
};

Compartments sueir_rates(const SueirParams& p, const Compartments& x) noexcept;

struct SueirRun {
  std::vector<double> times;
  std::vector<Compartments> states;
  double initial_population = 0.0;

  series::TimeSeries compartment(double Compartments::*field, const char* name) const;
};

/// Classical RK4 on the fixed internal step, sampled every dt_out on [0, t_end].
SueirRun integrate_sueir(const SueirParams& params);

/// I(t) / N with N the initial population.
series::TimeSeries infectious_proportion(const SueirRun& run);

struct NoiseSpec {
  double sigma_zeta = 0.1;
  std::uint64_t seed = 0;
  /// true: independent zeta per time point; false: one zeta per trajectory.
  bool per_point = true;

  void validate() const;
};

/// y(t) + zeta_t * max_s |y(s)|, zeta ~ N(0, sigma_zeta^2).
series::TimeSeries add_noise(const series::TimeSeries& clean, const NoiseSpec& spec);
series::TimeSeries add_noise(const series::TimeSeries& clean, double sigma_zeta, bool per_point,
                             RngStream rng);

/// Left moving average with a 7-point window (partial windows at the start).
series::TimeSeries smooth_7day(const series::TimeSeries& series);

/// One clean trajectory plus `count` independently noised and smoothed
/// copies; copy i draws its noise from stream child(i) of the base seed.
std::vector<series::TimeSeries> generate_ensemble(const SueirParams& params, const NoiseSpec& spec,
                                                  std::size_t count);

}  // namespace rfblt::sim
