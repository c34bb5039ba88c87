#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tcm/gronwall.hpp"
#include "tcm/model.hpp"
#include "tcm/records.hpp"

namespace tcm::io {

namespace fs = std::filesystem;

const char* version();

/// Tolerances of the `check` command, read from the [check] section.
struct CheckSettings {
  double energy_tol = 1e-2;        // |energy residual| at T, relative
  double max_principle_tol = 1e-4; // margin >= -tol * ||theta_0||_inf
  double residual_tol = 1e-1;      // normalized derived-equation residuals
  double gronwall_tol = gronwall::kDefaultTolerance;
  double div_tol = 1e-10;          // ||div u||_2 / ||u||_H1
  double mean_tol = 1e-10;         // mean drift relative to 1 + ||.||_2 at t=0
};

struct ConfigFile {
  SimConfig sim;
  CheckSettings check;
};

/// Flat text: `[section]` headers, `key = value` lines, `#` comments.
/// Sections: grid, time, model, init, output, check.  Errors name the line.
ConfigFile parse_config(const std::string& text, const std::string& origin = "<config>");
ConfigFile load_config(const fs::path& path);

/// Sets one key; throws ConfigParse for an unknown section/key or bad value.
void set_config_value(ConfigFile& cfg, const std::string& section, const std::string& key,
                      const std::string& value);

/// Text form readable by parse_config.
std::string format_config(const ConfigFile& cfg);

/// "%.17g" rendering used by every text output.
std::string format_double(double x);

// Snapshots: "TCM1 n=<n> L=<length> t=<time> field=<name> eps=<eps>\n"
// followed by n*n little-endian doubles in row-major order (index iy*n + ix).
inline constexpr const char* kSnapshotFields[] = {"u1", "u2", "v1", "v2", "theta"};

struct SnapshotField {
  int n = 0;
  double length = 0.0;
  double t = 0.0;
  double eps = 0.0;
  std::string name;
  std::vector<double> samples;
};

void write_snapshot_field(const fs::path& path, const SpectralField& f, const std::string& name,
                          double t, double eps);
SnapshotField read_snapshot_field(const fs::path& path);

/// Writes <dir>/s<step>_<field>.bin for every field; returns the paths.
std::vector<fs::path> write_snapshot(const fs::path& dir, std::size_t step, const State& s);
State read_snapshot(const fs::path& dir, std::size_t step);
std::vector<std::size_t> list_snapshot_steps(const fs::path& dir);

void write_diagnostics_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> read_diagnostics_csv(const fs::path& path);

/// Columns time, A, B, alpha, beta.  BadSeries errors name the data row
/// (1-based, header excluded).
void write_gronwall_csv(const fs::path& path, const gronwall::Series& g);
gronwall::Series read_gronwall_csv(const fs::path& path);

/// Generic CSV with a header row; values written with format_double.
void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

std::string sha256_file(const fs::path& path);

struct ManifestEntry {
  std::string path;  // relative to the run directory
  std::uintmax_t bytes = 0;
  std::string sha256;
};

struct Manifest {
  std::string version;
  std::string config;  // format_config echo
  std::string start_time;
  std::string end_time;
  std::vector<ManifestEntry> files;
};

std::string utc_timestamp();

/// Checksums `files` (relative to dir) and writes dir/manifest.json.
void write_manifest(const fs::path& dir, Manifest manifest, const std::vector<std::string>& files);
Manifest read_manifest(const fs::path& dir);

/// Re-reads every listed file; throws ChecksumMismatch on a differing digest
/// or size and IoError on a missing file.
void verify_manifest(const fs::path& dir);

}  // namespace tcm::io
