#pragma once

#include <cstdint>
#include <numbers>
#include <string>

#include "tcm/spectral_field.hpp"

namespace tcm {

/// Solution of the tropical climate model at one instant: barotropic velocity
/// u, baroclinic velocity v, temperature theta and the temperature
/// diffusivity eps (zero for the target system).
struct State {
  VectorField u;
  VectorField v;
  SpectralField theta;
  double t = 0.0;
  double eps = 0.0;

  explicit State(const Grid& grid) : u(grid), v(grid), theta(grid) {}
  State(VectorField u_, VectorField v_, SpectralField theta_, double t_,
        double eps_);

  const Grid& grid() const noexcept { return theta.grid(); }
};

struct Tendency {
  VectorField du;
  VectorField dv;
  SpectralField dtheta;
};

enum class InitPreset { taylor_green, single_mode, random_band };

const char* to_string(InitPreset p);
InitPreset parse_preset(const std::string& name);

struct InitParams {
  InitPreset preset = InitPreset::random_band;
  // taylor_green
  double amplitude = 1.0;
  // single_mode: theta = amp_theta sin(k.x); u and v are single-mode
  // solenoidal / compressive fields with the same wavevector.
  int mode_x = 1;
  int mode_y = 0;
  double amp_u = 0.0;
  double amp_v = 0.0;
  double amp_theta = 1.0;
  // random_band: root-mean-square amplitudes on the band
  // kmin <= max(|kx|,|ky|) <= kmax.
  int kmin = 1;
  int kmax = 4;
  double rms_u = 1.0;
  double rms_v = 1.0;
  double rms_theta = 1.0;
  std::uint64_t seed = 1;
};

struct SimConfig {
  int n = 64;
  double length = 2.0 * std::numbers::pi;
  double dt = 0.005;
  double horizon = 1.0;
  double eps = 0.0;
  double cfl_max = 0.5;
  bool dealias = true;
  int diagnostics_stride = 1;
  int snapshot_stride = 10;
  InitParams init;
  std::string output_dir;

  /// Throws ConfigParse on an invalid combination.
  void validate() const;
  Grid grid() const { return Grid(n, length); }
};

/// Builds the initial state for a preset.  u is projected onto
/// divergence-free fields; with `dealias` set the data are truncated to the
/// two-thirds band.  Throws BadParams when the requested band or mode is not
/// resolved.
State make_initial(const InitParams& params, const Grid& grid, double eps,
                   bool dealias);

/// Time derivatives of (u, v, theta):
///   du     = P[-(u.grad)u + Lap u - div(v (x) v)]
///   dv     = -(u.grad)v + Lap v - grad theta - (v.grad)u
///   dtheta = -u.grad theta + eps Lap theta - div v
Tendency rhs(const State& s, bool dealias);

/// Nonlinear and coupling part of rhs (everything except the Laplacians).
Tendency explicit_part(const State& s, bool dealias);

/// Advective CFL ratio dt * max(|u|,|v|) / h.
double cfl_ratio(const State& s, double dt);

struct StepOptions {
  bool dealias = true;
  double cfl_max = 0.5;
};

/// One step of the two-stage IMEX scheme: Crank-Nicolson on the diffusion
/// terms, Heun on the explicit part, u re-projected after each stage.
/// Throws CflError when the advective ratio exceeds options.cfl_max.
State imex_step(const State& s, double dt, const StepOptions& options);

}  // namespace tcm
