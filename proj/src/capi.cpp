#include "tcm/tcm.h"

#include <cstring>
#include <string>

#include "tcm/error.hpp"
#include "tcm/io.hpp"
#include "tcm/runner.hpp"

struct tcm_config {
  tcm::io::ConfigFile file;
};

struct tcm_simulation {
  tcm::SimConfig config;
  tcm::State state;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_kind = "None";
thread_local std::string last_summary;

int status_for(tcm::ErrorKind kind) {
  using tcm::ErrorKind;
  switch (kind) {
    case ErrorKind::CflViolation: return TCM_ERR_NUMERIC;
    case ErrorKind::IoError:
    case ErrorKind::ChecksumMismatch: return TCM_ERR_IO;
    case ErrorKind::Internal: return TCM_ERR_INTERNAL;
    default: return TCM_ERR_CONFIG;
  }
}

template <class F>
int guarded(F&& f) {
  try {
    last_error.clear();
    last_kind = "None";
    return f();
  } catch (const tcm::Error& e) {
    last_error = e.what();
    last_kind = tcm::to_string(e.kind());
    return status_for(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    last_kind = "Internal";
    return TCM_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    last_kind = "Internal";
    return TCM_ERR_INTERNAL;
  }
}

int null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  last_kind = "BadParams";
  return TCM_ERR_CONFIG;
}

std::filesystem::path out_path(const char* p) { return p ? std::filesystem::path(p) : std::filesystem::path(); }

int finish(const tcm::runner::CommandResult& r) {
  last_summary = r.summary;
  return r.passed ? TCM_OK : TCM_ERR_CHECK_FAILED;
}

}  // namespace

extern "C" {

const char* tcm_version(void) { return tcm::io::version(); }
const char* tcm_last_error(void) { return last_error.c_str(); }
const char* tcm_last_error_kind(void) { return last_kind.c_str(); }
const char* tcm_last_summary(void) { return last_summary.c_str(); }

int tcm_config_default(tcm_config** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = new tcm_config{};
    return TCM_OK;
  });
}

int tcm_config_load(const char* path, tcm_config** out) {
  if (!path || !out) return null_arg("path/out");
  return guarded([&] {
    *out = new tcm_config{tcm::io::load_config(path)};
    return TCM_OK;
  });
}

int tcm_config_parse(const char* text, tcm_config** out) {
  if (!text || !out) return null_arg("text/out");
  return guarded([&] {
    *out = new tcm_config{tcm::io::parse_config(text)};
    return TCM_OK;
  });
}

int tcm_config_set(tcm_config* cfg, const char* section, const char* key, const char* value) {
  if (!cfg || !section || !key || !value) return null_arg("cfg/section/key/value");
  return guarded([&] {
    tcm::io::ConfigFile copy = cfg->file;
    tcm::io::set_config_value(copy, section, key, value);
    cfg->file = std::move(copy);
    return TCM_OK;
  });
}

int tcm_config_to_text(const tcm_config* cfg, char* buffer, size_t capacity, size_t* needed) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    const std::string text = tcm::io::format_config(cfg->file);
    if (needed) *needed = text.size() + 1;
    if (buffer && capacity >= text.size() + 1) std::memcpy(buffer, text.c_str(), text.size() + 1);
    return TCM_OK;
  });
}

void tcm_config_free(tcm_config* cfg) { delete cfg; }

int tcm_simulation_create(const tcm_config* cfg, tcm_simulation** out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] {
    const tcm::SimConfig& c = cfg->file.sim;
    c.validate();
    *out = new tcm_simulation{c, tcm::make_initial(c.init, c.grid(), c.eps, c.dealias)};
    return TCM_OK;
  });
}

int tcm_simulation_step(tcm_simulation* sim, int steps) {
  if (!sim) return null_arg("sim");
  return guarded([&] {
    const tcm::StepOptions opts{sim->config.dealias, sim->config.cfl_max};
    for (int i = 0; i < steps; ++i) {
      const double t = sim->state.t;
      sim->state = tcm::imex_step(sim->state, sim->config.dt, opts);
      sim->state.t = t + sim->config.dt;
    }
    return TCM_OK;
  });
}

double tcm_simulation_time(const tcm_simulation* sim) { return sim ? sim->state.t : 0.0; }

int tcm_simulation_grid_size(const tcm_simulation* sim) { return sim ? sim->config.n : 0; }

int tcm_simulation_energy(const tcm_simulation* sim, double* energy) {
  if (!sim || !energy) return null_arg("sim/energy");
  return guarded([&] {
    *energy = tcm::compute_record(sim->state, sim->config.dealias).energy;
    return TCM_OK;
  });
}

int tcm_simulation_field(const tcm_simulation* sim, const char* name, double* buffer, size_t count) {
  if (!sim || !name || !buffer) return null_arg("sim/name/buffer");
  return guarded([&] {
    const tcm::State& s = sim->state;
    const std::string n = name;
    const tcm::SpectralField* f = n == "u1"      ? &s.u.x
                                  : n == "u2"    ? &s.u.y
                                  : n == "v1"    ? &s.v.x
                                  : n == "v2"    ? &s.v.y
                                  : n == "theta" ? &s.theta
                                                 : nullptr;
    if (!f) throw tcm::Error(tcm::ErrorKind::BadParams, "unknown field '" + n + "'");
    const tcm::SpectralField p = f->to_physical();
    const auto samples = p.samples();
    if (count != samples.size())
      throw tcm::Error(tcm::ErrorKind::BadParams, "buffer must hold n*n samples");
    std::memcpy(buffer, samples.data(), count * sizeof(double));
    return TCM_OK;
  });
}

void tcm_simulation_free(tcm_simulation* sim) { delete sim; }

int tcm_run(const tcm_config* cfg, const char* out_dir) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] { return finish(tcm::runner::cmd_run(cfg->file, out_path(out_dir))); });
}

int tcm_check(const char* source, const char* out_dir) {
  if (!source) return null_arg("source");
  return guarded([&] { return finish(tcm::runner::cmd_check(source, out_path(out_dir))); });
}

int tcm_check_config(const tcm_config* cfg, const char* out_dir) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] { return finish(tcm::runner::cmd_check_config(cfg->file, out_path(out_dir))); });
}

int tcm_sweep_eps(const tcm_config* const* levels, size_t count, const char* out_dir) {
  if (!levels) return null_arg("levels");
  return guarded([&] {
    std::vector<tcm::io::ConfigFile> files;
    for (size_t i = 0; i < count; ++i) {
      if (!levels[i]) throw tcm::Error(tcm::ErrorKind::BadParams, "null sweep level");
      files.push_back(levels[i]->file);
    }
    return finish(tcm::runner::cmd_sweep_eps(files, out_path(out_dir)));
  });
}

int tcm_sweep_eps_levels(const tcm_config* base, const double* eps, size_t count, const char* out_dir) {
  if (!base || !eps) return null_arg("base/eps");
  return guarded([&] {
    std::vector<tcm::io::ConfigFile> files;
    for (size_t i = 0; i < count; ++i) {
      tcm::io::ConfigFile f = base->file;
      f.sim.eps = eps[i];
      files.push_back(f);
    }
    return finish(tcm::runner::cmd_sweep_eps(files, out_path(out_dir)));
  });
}

int tcm_twin(const tcm_config* cfg, double delta, const char* shape, uint64_t seed,
             const char* out_dir) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    const auto s = tcm::parse_shape(shape ? shape : "random_band");
    return finish(tcm::runner::cmd_twin(cfg->file, delta, s, seed, out_path(out_dir)));
  });
}

int tcm_gronwall(const char* csv_path, int fit, double k, double k_min, double tol,
                 const char* out_dir) {
  if (!csv_path) return null_arg("csv_path");
  return guarded([&] {
    tcm::runner::GronwallOptions o;
    o.fit = fit != 0;
    if (k > 0.0) o.K = k;
    if (k_min > 0.0) o.k_min = k_min;
    if (tol > 0.0) o.tol = tol;
    return finish(tcm::runner::cmd_gronwall(csv_path, o, out_path(out_dir)));
  });
}

}  // extern "C"
