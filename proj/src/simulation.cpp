#include "tcm/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "tcm/error.hpp"

namespace tcm {

std::pair<std::size_t, double> step_plan(const SimConfig& cfg) {
  if (cfg.horizon <= 0.0) return {0, cfg.dt};
  const double ratio = cfg.horizon / cfg.dt;
  auto steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));
  if (steps == 0) steps = 1;
  return {steps, cfg.horizon / static_cast<double>(steps)};
}

Trajectory simulate(const SimConfig& cfg, const SimulateOptions& options) {
  cfg.validate();
  const Grid grid = cfg.grid();
  Trajectory traj;
  traj.config = cfg;
  const auto [steps, dt] = step_plan(cfg);
  traj.steps = steps;
  traj.dt = dt;

  State state = options.initial != nullptr
                    ? *options.initial
                    : make_initial(cfg.init, grid, cfg.eps, cfg.dealias);
  state.t = 0.0;
  state.eps = cfg.eps;

  const StepOptions step_options{cfg.dealias, cfg.cfl_max};
  const auto diag = static_cast<std::size_t>(cfg.diagnostics_stride);
  const auto snap = static_cast<std::size_t>(cfg.snapshot_stride);

  for (std::size_t k = 0;; ++k) {
    if (k % diag == 0) traj.records.push_back(compute_record(state, cfg.dealias));
    if (k % snap == 0) {
      if (options.on_snapshot) options.on_snapshot(k, state);
      if (options.keep_snapshots) traj.snapshots.push_back(state);
    } else if (options.on_snapshot &&
               std::find(options.extra_snapshot_steps.begin(),
                         options.extra_snapshot_steps.end(),
                         k) != options.extra_snapshot_steps.end()) {
      options.on_snapshot(k, state);
    }
    if (k == steps) break;
    state = imex_step(state, dt, step_options);
    state.t = static_cast<double>(k + 1) * dt;
  }
  return traj;
}

}  // namespace tcm
