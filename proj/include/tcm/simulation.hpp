#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "tcm/model.hpp"
#include "tcm/records.hpp"

namespace tcm {

struct Trajectory {
  SimConfig config;
  double dt = 0.0;  // effective step (horizon / steps)
  std::size_t steps = 0;
  std::vector<DiagnosticsRecord> records;
  std::vector<State> snapshots;  // filled when SimulateOptions::keep_snapshots
};

struct SimulateOptions {
  bool keep_snapshots = true;
  /// Called for every snapshot (step index, state) before it is stored.
  std::function<void(std::size_t, const State&)> on_snapshot;
  /// Replaces the initial state built from config.init (twin runs).
  const State* initial = nullptr;
  /// Additional steps passed to on_snapshot (not stored in snapshots).
  std::vector<std::size_t> extra_snapshot_steps;
};

/// Number of steps and effective dt: steps = ceil(T/dt) (tolerating
/// roundoff), dt_eff = T/steps.
std::pair<std::size_t, double> step_plan(const SimConfig& cfg);

/// Advances make_initial(cfg) to cfg.horizon, recording diagnostics every
/// diagnostics_stride steps and snapshots every snapshot_stride steps (step 0
/// included).  Throws CflError on a rejected step.
Trajectory simulate(const SimConfig& cfg, const SimulateOptions& options = {});

}  // namespace tcm
