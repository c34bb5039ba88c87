#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tcm/diagnostics.hpp"
#include "tcm/io.hpp"

namespace tcm::runner {

namespace fs = std::filesystem;

struct CheckResult {
  std::string name;
  bool asserted = true;  // observational checks never gate
  bool passed = true;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct CommandResult {
  bool passed = true;
  std::string summary;
  std::vector<CheckResult> checks;
  std::vector<std::string> files;  // relative to the output directory
};

/// Output directory: `out` when given, else the config's output.dir, else "tcm_out".
fs::path resolve_output(const io::ConfigFile& cfg, const fs::path& out);

/// Simulates and writes config.txt, diagnostics.csv, snapshots/ and
/// manifest.json into the output directory.
CommandResult cmd_run(const io::ConfigFile& cfg, const fs::path& out);

/// Verifies a completed run directory (manifest checksums first) and writes
/// check_report.txt and check_report.csv next to it.
CommandResult cmd_check_dir(const fs::path& run_dir);

/// Runs `cfg` into `out` and checks the result.
CommandResult cmd_check_config(const io::ConfigFile& cfg, const fs::path& out);

/// Dispatches on whether `source` is a directory or a config file.
CommandResult cmd_check(const fs::path& source, const fs::path& out);

CommandResult cmd_sweep_eps(const std::vector<io::ConfigFile>& levels, const fs::path& out);

CommandResult cmd_twin(const io::ConfigFile& cfg, double delta, PerturbationShape shape,
                       std::uint64_t seed, const fs::path& out);

struct GronwallOptions {
  std::optional<double> K;  // used when not fitting; default 1
  bool fit = false;
  double k_min = 1e-6;
  double tol = gronwall::kDefaultTolerance;
};

/// Reads a (time, A, B, alpha, beta) CSV, evaluates the Gronwall inequality and, when `out`
/// is not empty, writes gronwall_report.csv and gronwall_report.txt there.
CommandResult cmd_gronwall(const fs::path& csv, const GronwallOptions& options,
                           const fs::path& out);

}  // namespace tcm::runner
