#include "tcm/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cerrno>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <numbers>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "tcm/error.hpp"

namespace tcm::io {
namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& msg) {
  throw Error(ErrorKind::ConfigParse,
              origin + ":" + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& key, const std::string& v) {
  std::string s = v;
  double factor = 1.0;
  // Accepts "<number>pi" and "pi" for domain lengths.
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    factor = std::numbers::pi;
    s = s.substr(0, s.size() - 2);
    if (s.empty()) s = "1";
  }
  char* end = nullptr;
  errno = 0;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(x))
    throw Error(ErrorKind::ConfigParse, "key '" + key + "': '" + v + "' is not a number");
  return x * factor;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw Error(ErrorKind::ConfigParse, "key '" + key + "': '" + v + "' is not an integer");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw Error(ErrorKind::ConfigParse, "key '" + key + "': '" + v + "' is not a boolean");
}

int to_int32(const std::string& key, const std::string& v) {
  const long long x = to_int(key, v);
  if (x < -2147483647LL || x > 2147483647LL)
    throw Error(ErrorKind::ConfigParse, "key '" + key + "' out of range");
  return static_cast<int>(x);
}

std::uint64_t to_seed(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto r = std::from_chars(v.data(), v.data() + v.size(), x);
  if (r.ec != std::errc() || r.ptr != v.data() + v.size())
    throw Error(ErrorKind::ConfigParse, "key '" + key + "': '" + v + "' is not a seed");
  return x;
}

void write_le_doubles(std::ostream& os, std::span<const double> v) {
  if constexpr (std::endian::native == std::endian::little) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double x : v) {
      auto b = std::bit_cast<std::array<char, 8>>(x);
      std::reverse(b.begin(), b.end());
      os.write(b.data(), 8);
    }
  }
}

void read_le_doubles(std::istream& is, std::vector<double>& v) {
  is.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(v.size() * sizeof(double)));
  if constexpr (std::endian::native != std::endian::little) {
    for (double& x : v) {
      auto b = std::bit_cast<std::array<char, 8>>(x);
      std::reverse(b.begin(), b.end());
      x = std::bit_cast<double>(b);
    }
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double csv_double(const std::string& s, bool& ok) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  ok = !s.empty() && end == s.c_str() + s.size();
  return x;
}

}  // namespace

const char* version() { return TCM_VERSION; }

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void set_config_value(ConfigFile& cfg, const std::string& section, const std::string& key,
                      const std::string& value) {
  SimConfig& s = cfg.sim;
  InitParams& p = s.init;
  CheckSettings& c = cfg.check;
  const std::string k = section + "." + key;
  const std::map<std::string, std::function<void()>> setters = {
      {"grid.n", [&] { s.n = to_int32(k, value); }},
      {"grid.length", [&] { s.length = to_double(k, value); }},
      {"time.dt", [&] { s.dt = to_double(k, value); }},
      {"time.horizon", [&] { s.horizon = to_double(k, value); }},
      {"time.cfl_max", [&] { s.cfl_max = to_double(k, value); }},
      {"model.eps", [&] { s.eps = to_double(k, value); }},
      {"model.dealias", [&] { s.dealias = to_bool(k, value); }},
      {"init.preset", [&] { p.preset = parse_preset(value); }},
      {"init.amplitude", [&] { p.amplitude = to_double(k, value); }},
      {"init.mode_x", [&] { p.mode_x = to_int32(k, value); }},
      {"init.mode_y", [&] { p.mode_y = to_int32(k, value); }},
      {"init.amp_u", [&] { p.amp_u = to_double(k, value); }},
      {"init.amp_v", [&] { p.amp_v = to_double(k, value); }},
      {"init.amp_theta", [&] { p.amp_theta = to_double(k, value); }},
      {"init.kmin", [&] { p.kmin = to_int32(k, value); }},
      {"init.kmax", [&] { p.kmax = to_int32(k, value); }},
      {"init.rms_u", [&] { p.rms_u = to_double(k, value); }},
      {"init.rms_v", [&] { p.rms_v = to_double(k, value); }},
      {"init.rms_theta", [&] { p.rms_theta = to_double(k, value); }},
      {"init.seed", [&] { p.seed = to_seed(k, value); }},
      {"output.diagnostics_stride", [&] { s.diagnostics_stride = to_int32(k, value); }},
      {"output.snapshot_stride", [&] { s.snapshot_stride = to_int32(k, value); }},
      {"output.dir", [&] { s.output_dir = value; }},
      {"check.energy_tol", [&] { c.energy_tol = to_double(k, value); }},
      {"check.max_principle_tol", [&] { c.max_principle_tol = to_double(k, value); }},
      {"check.residual_tol", [&] { c.residual_tol = to_double(k, value); }},
      {"check.gronwall_tol", [&] { c.gronwall_tol = to_double(k, value); }},
      {"check.div_tol", [&] { c.div_tol = to_double(k, value); }},
      {"check.mean_tol", [&] { c.mean_tol = to_double(k, value); }},
  };
  const auto it = setters.find(k);
  if (it == setters.end())
    throw Error(ErrorKind::ConfigParse, "unknown key '" + key + "' in section [" + section + "]");
  it->second();
}

ConfigFile parse_config(const std::string& text, const std::string& origin) {
  ConfigFile cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') parse_fail(origin, line_no, "malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      static const char* known[] = {"grid", "time", "model", "init", "output", "check"};
      if (std::find(std::begin(known), std::end(known), section) == std::end(known))
        parse_fail(origin, line_no, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) parse_fail(origin, line_no, "expected 'key = value'");
    if (section.empty()) parse_fail(origin, line_no, "key outside of a section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) parse_fail(origin, line_no, "empty key or value");
    try {
      set_config_value(cfg, section, key, value);
    } catch (const Error& e) {
      parse_fail(origin, line_no, e.what());
    }
  }
  try {
    cfg.sim.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigParse, origin + ": " + e.what());
  }
  return cfg;
}

ConfigFile load_config(const fs::path& path) {
  return parse_config(read_text(path), path.string());
}

std::string format_config(const ConfigFile& cfg) {
  const SimConfig& s = cfg.sim;
  const InitParams& p = s.init;
  const CheckSettings& c = cfg.check;
  std::ostringstream o;
  o << "[grid]\nn = " << s.n << "\nlength = " << format_double(s.length) << "\n\n";
  o << "[time]\ndt = " << format_double(s.dt) << "\nhorizon = " << format_double(s.horizon)
    << "\ncfl_max = " << format_double(s.cfl_max) << "\n\n";
  o << "[model]\neps = " << format_double(s.eps)
    << "\ndealias = " << (s.dealias ? "true" : "false") << "\n\n";
  o << "[init]\npreset = " << to_string(p.preset) << "\namplitude = " << format_double(p.amplitude)
    << "\nmode_x = " << p.mode_x << "\nmode_y = " << p.mode_y
    << "\namp_u = " << format_double(p.amp_u) << "\namp_v = " << format_double(p.amp_v)
    << "\namp_theta = " << format_double(p.amp_theta) << "\nkmin = " << p.kmin
    << "\nkmax = " << p.kmax << "\nrms_u = " << format_double(p.rms_u)
    << "\nrms_v = " << format_double(p.rms_v) << "\nrms_theta = " << format_double(p.rms_theta)
    << "\nseed = " << p.seed << "\n\n";
  o << "[output]\ndiagnostics_stride = " << s.diagnostics_stride
    << "\nsnapshot_stride = " << s.snapshot_stride << "\n";
  if (!s.output_dir.empty()) o << "dir = " << s.output_dir << "\n";
  o << "\n[check]\nenergy_tol = " << format_double(c.energy_tol)
    << "\nmax_principle_tol = " << format_double(c.max_principle_tol)
    << "\nresidual_tol = " << format_double(c.residual_tol)
    << "\ngronwall_tol = " << format_double(c.gronwall_tol)
    << "\ndiv_tol = " << format_double(c.div_tol) << "\nmean_tol = " << format_double(c.mean_tol)
    << "\n";
  return o.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  os << text;
  if (!os) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

std::string read_text(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_snapshot_field(const fs::path& path, const SpectralField& f, const std::string& name,
                          double t, double eps) {
  const SpectralField p = f.to_physical();
  const Grid& g = p.grid();
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  os << "TCM1 n=" << g.n() << " L=" << format_double(g.length()) << " t=" << format_double(t)
     << " field=" << name << " eps=" << format_double(eps) << "\n";
  write_le_doubles(os, p.samples());
  if (!os) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

SnapshotField read_snapshot_field(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::string header;
  std::getline(is, header);
  static const std::regex re(
      R"(TCM1 n=(\d+) L=(\S+) t=(\S+) field=(\S+) eps=(\S+))");
  std::smatch m;
  if (!std::regex_match(header, m, re))
    throw Error(ErrorKind::IoError, "'" + path.string() + "' has no TCM1 header");
  SnapshotField out;
  bool ok = true, ok1 = true;
  out.n = std::stoi(m[1]);
  out.length = csv_double(m[2], ok);
  out.t = csv_double(m[3], ok1);
  ok = ok && ok1;
  out.name = m[4];
  out.eps = csv_double(m[5], ok1);
  if (!(ok && ok1) || out.n < 8)
    throw Error(ErrorKind::IoError, "'" + path.string() + "' has a malformed header");
  out.samples.resize(static_cast<std::size_t>(out.n) * out.n);
  read_le_doubles(is, out.samples);
  if (!is) throw Error(ErrorKind::IoError, "'" + path.string() + "' is truncated");
  if (is.peek() != std::char_traits<char>::eof())
    throw Error(ErrorKind::IoError, "'" + path.string() + "' has trailing bytes");
  return out;
}

std::vector<fs::path> write_snapshot(const fs::path& dir, std::size_t step, const State& s) {
  const SpectralField* fields[] = {&s.u.x, &s.u.y, &s.v.x, &s.v.y, &s.theta};
  std::vector<fs::path> paths;
  for (int i = 0; i < 5; ++i) {
    fs::path p = dir / ("s" + std::to_string(step) + "_" + kSnapshotFields[i] + ".bin");
    write_snapshot_field(p, *fields[i], kSnapshotFields[i], s.t, s.eps);
    paths.push_back(p);
  }
  return paths;
}

State read_snapshot(const fs::path& dir, std::size_t step) {
  std::vector<SnapshotField> parts;
  for (const char* name : kSnapshotFields) {
    parts.push_back(read_snapshot_field(dir / ("s" + std::to_string(step) + "_" + name + ".bin")));
    const auto& b = parts.back();
    const auto& a = parts.front();
    if (b.name != name || b.n != a.n || b.length != a.length || b.t != a.t || b.eps != a.eps)
      throw Error(ErrorKind::IoError, "inconsistent snapshot files for step " + std::to_string(step));
  }
  const Grid grid(parts[0].n, parts[0].length);
  auto field = [&](int i) {
    return SpectralField::from_physical(grid, std::move(parts[static_cast<std::size_t>(i)].samples))
        .to_spectral();
  };
  const double t = parts[0].t;
  const double eps = parts[0].eps;
  VectorField u(field(0), field(1));
  VectorField v(field(2), field(3));
  return State(std::move(u), std::move(v), field(4), t, eps);
}

std::vector<std::size_t> list_snapshot_steps(const fs::path& dir) {
  std::vector<std::size_t> steps;
  if (!fs::is_directory(dir)) return steps;
  static const std::regex re(R"(s(\d+)_theta\.bin)");
  for (const auto& e : fs::directory_iterator(dir)) {
    std::smatch m;
    const std::string name = e.path().filename().string();
    if (std::regex_match(name, m, re)) steps.push_back(std::stoull(m[1]));
  }
  std::sort(steps.begin(), steps.end());
  return steps;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  std::ostringstream o;
  for (std::size_t i = 0; i < header.size(); ++i) o << (i ? "," : "") << header[i];
  o << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      o << (c ? "," : "") << format_double(columns[c][r]);
    o << "\n";
  }
  write_text(path, o.str());
}

void write_diagnostics_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& records) {
  std::ostringstream o;
  const auto& cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) o << (i ? "," : "") << cols[i];
  o << "\n";
  for (const auto& r : records) {
    const auto v = record_values(r);
    for (std::size_t i = 0; i < v.size(); ++i) o << (i ? "," : "") << format_double(v[i]);
    o << "\n";
  }
  write_text(path, o.str());
}

std::vector<DiagnosticsRecord> read_diagnostics_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::IoError, "'" + path.string() + "' is empty");
  const auto header = split_csv(line);
  const auto& cols = record_columns();
  if (header.size() != cols.size() || !std::equal(header.begin(), header.end(), cols.begin()))
    throw Error(ErrorKind::IoError, "'" + path.string() + "' has an unexpected header");
  std::vector<DiagnosticsRecord> out;
  int row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    std::vector<double> v;
    for (const auto& c : cells) {
      bool ok = false;
      v.push_back(csv_double(c, ok));
      if (!ok)
        throw Error(ErrorKind::IoError,
                    "'" + path.string() + "' row " + std::to_string(row) + ": bad number '" + c + "'");
    }
    out.push_back(record_from_values(v));
  }
  return out;
}

void write_gronwall_csv(const fs::path& path, const gronwall::Series& g) {
  write_csv(path, {"time", "A", "B", "alpha", "beta"}, {g.times, g.A, g.B, g.alpha, g.beta});
}

gronwall::Series read_gronwall_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw SeriesError(0, "'" + path.string() + "' is empty");
  const auto header = split_csv(line);
  const std::vector<std::string> want = {"time", "A", "B", "alpha", "beta"};
  std::array<int, 5> pos{-1, -1, -1, -1, -1};
  for (std::size_t i = 0; i < header.size(); ++i)
    for (std::size_t j = 0; j < want.size(); ++j)
      if (header[i] == want[j]) pos[j] = static_cast<int>(i);
  for (std::size_t j = 0; j < want.size(); ++j)
    if (pos[j] < 0) throw SeriesError(0, "'" + path.string() + "' lacks column '" + want[j] + "'");

  gronwall::Series g;
  std::vector<double>* dst[] = {&g.times, &g.A, &g.B, &g.alpha, &g.beta};
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    ++row;
    const auto cells = split_csv(line);
    for (std::size_t j = 0; j < 5; ++j) {
      const auto p = static_cast<std::size_t>(pos[j]);
      bool ok = p < cells.size();
      const double x = ok ? csv_double(cells[p], ok) : 0.0;
      if (!ok)
        throw SeriesError(row - 1, "row " + std::to_string(row) + ": bad value in column '" +
                                       want[j] + "'");
      dst[j]->push_back(x);
    }
  }
  try {
    gronwall::validate(g, false);
  } catch (const SeriesError& e) {
    throw SeriesError(e.index(), "row " + std::to_string(e.index() + 1) + ": " + e.what());
  }
  return g;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::Internal, "sha256 initialization failed");
  std::array<char, 1 << 16> buf;
  while (is) {
    is.read(buf.data(), buf.size());
    if (is.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(is.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const fs::path& dir, Manifest manifest, const std::vector<std::string>& files) {
  manifest.files.clear();
  for (const auto& f : files) {
    const fs::path p = dir / f;
    std::error_code ec;
    const auto bytes = fs::file_size(p, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot stat '" + p.string() + "'");
    manifest.files.push_back({f, bytes, sha256_file(p)});
  }
  nlohmann::ordered_json j;
  j["format"] = "tcm-manifest-1";
  j["version"] = manifest.version;
  j["config"] = manifest.config;
  j["start_time"] = manifest.start_time;
  j["end_time"] = manifest.end_time;
  j["files"] = nlohmann::json::array();
  for (const auto& e : manifest.files)
    j["files"].push_back({{"path", e.path}, {"bytes", e.bytes}, {"sha256", e.sha256}});
  write_text(dir / "manifest.json", j.dump(2) + "\n");
}

Manifest read_manifest(const fs::path& dir) {
  Manifest m;
  try {
    const auto j = nlohmann::json::parse(read_text(dir / "manifest.json"));
    m.version = j.at("version").get<std::string>();
    m.config = j.at("config").get<std::string>();
    m.start_time = j.at("start_time").get<std::string>();
    m.end_time = j.at("end_time").get<std::string>();
    for (const auto& e : j.at("files"))
      m.files.push_back({e.at("path").get<std::string>(), e.at("bytes").get<std::uintmax_t>(),
                         e.at("sha256").get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::IoError, "malformed manifest in '" + dir.string() + "': " + e.what());
  }
  return m;
}

void verify_manifest(const fs::path& dir) {
  const Manifest m = read_manifest(dir);
  for (const auto& e : m.files) {
    const fs::path p = dir / e.path;
    if (!fs::exists(p)) throw Error(ErrorKind::IoError, "manifest lists missing file '" + e.path + "'");
    std::error_code ec;
    const auto bytes = fs::file_size(p, ec);
    if (ec || bytes != e.bytes || sha256_file(p) != e.sha256)
      throw Error(ErrorKind::ChecksumMismatch, "checksum mismatch for '" + e.path + "'");
  }
}

}  // namespace tcm::io
