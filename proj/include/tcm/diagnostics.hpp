#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tcm/gronwall.hpp"
#include "tcm/records.hpp"
#include "tcm/simulation.hpp"

namespace tcm {

/// (||.||^2(t) + 2 int_0^t D - ||.||^2(0)) / ||.||^2(0) with ||.|| the L2 norm
/// of (u, v, theta); identically 0 for zero data.
struct EnergyResidual {
  std::vector<double> times;
  std::vector<double> residual;
  double final_value = 0.0;
  double max_abs = 0.0;
};
EnergyResidual energy_identity_residual(const std::vector<DiagnosticsRecord>& records);

/// margin(t) = ||theta_0||_inf + int_0^t ||phi||_inf - ||theta(t)||_inf.
struct MaxPrincipleReport {
  std::vector<double> times;
  std::vector<double> margin;
  double min_margin = 0.0;
  double theta0_linf = 0.0;
};
MaxPrincipleReport max_principle_check(const std::vector<DiagnosticsRecord>& records);

/// A and B from the records plus the coefficient surrogates
///   alpha = (t+1) m(t) + (t+1)^2 (1 + ||grad u||_H1^2),   beta = g(t),
///   m = ||(Lap u, Lap w, grad w, u, v)||_2^2 + ||theta||_4^2
///       + (1 + ||grad u||_H1) log^{1/2}[(1 + 1/t)(1 + ||grad u||_2^2)],
///   g = (t+1)(||(grad u, grad w, theta)||_4^4 + ||(grad v, Lap u, Lap w)||_2^2).
/// 1/t is evaluated at max(t, h/2), h the first record spacing.  K is left at 1.
gronwall::Series h1_temperature_functionals(const std::vector<DiagnosticsRecord>& records);

/// int_0^T ||grad u||_inf with the running integral and fits of the running
/// integral against t^{1/2}: coefficient c of c t^{1/2} and the log-log slope.
struct LipschitzReport {
  std::vector<double> times;
  std::vector<double> cumulative;
  double budget = 0.0;
  double sqrt_coefficient = 0.0;
  double loglog_exponent = 0.0;
};
LipschitzReport lipschitz_budget(const std::vector<DiagnosticsRecord>& records);

/// ||grad u||_inf / ((1 + ||grad u||_H1) log^{1/2}(e + ||grad u||_H2^2)); 0 for u = 0.
double bgw_ratio(const VectorField& u);

/// ||F||_2 / (||grad u||_2 ||theta||_2); 0 when the denominator vanishes.
double commutator_estimate_ratio(const VectorField& u, const SpectralField& theta,
                                 bool dealias = true);

enum class PerturbationShape { random_band, single_mode };
const char* to_string(PerturbationShape s);
PerturbationShape parse_shape(const std::string& name);

/// Perturbation of (u0, v0, theta0) scaled so that
/// ||(I - Lap)^{-1}(du, dv, dtheta)||_H1 = delta; du is divergence free.
State make_perturbation(const SimConfig& cfg, double delta, PerturbationShape shape,
                        std::uint64_t seed);

/// Low-norm size ||(I - Lap)^{-1}(a - b)||_H1 over (u, v, theta).
double low_norm_separation(const State& a, const State& b);

struct TwinReport {
  std::vector<double> times;
  std::vector<double> separation;
  std::vector<double> coefficient;  // c(t)
  std::vector<double> coefficient_integral;
  std::vector<double> envelope;     // safety * delta * exp(int c), +inf on overflow
  std::vector<double> log_envelope; // log(safety * delta) + int c
  double delta = 0.0;
  double safety = 10.0;
  bool envelope_holds = true;
  std::size_t first_violation = 0;
};

/// Runs the unperturbed configuration (solution 1) and the perturbed one
/// (solution 2) concurrently, snapshots at every record.
TwinReport twin_divergence(const SimConfig& cfg, double delta,
                           PerturbationShape shape = PerturbationShape::random_band,
                           std::uint64_t seed = 7, double safety = 10.0);

struct SweepLevel {
  double eps = 0.0;
  double velocity_distance = 0.0;  // ||(u, v) - (u0, v0)||_{L2(0,T;H1)}
  double theta_distance = 0.0;     // ||theta - theta0||_{L2(0,T;L2)}
  double max_energy = 0.0;
};

struct SweepReport {
  std::vector<SweepLevel> levels;  // positive eps, decreasing
  double reference_eps = 0.0;
  bool strictly_decreasing = true;
  double velocity_slope = 0.0;  // log-log slope of distance vs eps
  double theta_slope = 0.0;
};

/// Every config must agree in all fields but eps, otherwise ConfigMismatch.
/// The eps = 0 level is the reference; without one the smallest eps is.
SweepReport epsilon_sweep(const std::vector<SimConfig>& configs);

/// Configs for base with eps replaced by each level.
std::vector<SimConfig> sweep_configs(const SimConfig& base, const std::vector<double>& levels);

}  // namespace tcm
