#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tcm/tcm.h"

namespace {

using ConfigPtr = std::unique_ptr<tcm_config, decltype(&tcm_config_free)>;

int report(int status) {
  if (status == TCM_OK || status == TCM_ERR_CHECK_FAILED) {
    std::fputs(tcm_last_summary(), stdout);
    if (status == TCM_ERR_CHECK_FAILED)
      std::fprintf(stderr, "error: kind=CheckFailed exit=%d message=an asserted check failed\n", status);
    return status;
  }
  std::fprintf(stderr, "error: kind=%s exit=%d message=%s\n", tcm_last_error_kind(), status,
               tcm_last_error());
  return status;
}

int usage_error(const std::string& msg) {
  std::fprintf(stderr, "error: kind=ConfigParse exit=%d message=%s\n", TCM_ERR_CONFIG, msg.c_str());
  return TCM_ERR_CONFIG;
}

// Loads a config and applies the seed override; returns nullptr after
// reporting on failure.
ConfigPtr load(const std::string& path, const std::optional<std::uint64_t>& seed, int& status) {
  tcm_config* raw = nullptr;
  status = tcm_config_load(path.c_str(), &raw);
  ConfigPtr cfg(raw, tcm_config_free);
  if (status != TCM_OK) {
    report(status);
    return ConfigPtr(nullptr, tcm_config_free);
  }
  if (seed) {
    status = tcm_config_set(cfg.get(), "init", "seed", std::to_string(*seed).c_str());
    if (status != TCM_OK) {
      report(status);
      return ConfigPtr(nullptr, tcm_config_free);
    }
  }
  return cfg;
}

const char* opt_dir(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical climate model simulator and verification harness"};
  app.set_version_flag("--version", std::string(tcm_version()));
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string out, run_dir, csv, shape = "random_band", levels;
  std::optional<std::uint64_t> seed_override;
  double delta = 1e-8, k = 0.0, k_min = 1e-6, tol = 1e-6;
  std::uint64_t twin_seed = 7;
  bool fit_k = false;

  auto* run = app.add_subcommand("run", "simulate and write diagnostics, snapshots and manifest");
  run->add_option("--config", configs, "config file")->required()->expected(1);
  run->add_option("--out", out, "output directory");
  run->add_option("--seed-override", seed_override, "replace init.seed");

  auto* check = app.add_subcommand("check", "verify a run directory or a fresh run of a config");
  auto* check_cfg = check->add_option("--config", configs, "config file to run and check")->expected(1);
  auto* check_dir = check->add_option("--run-dir", run_dir, "completed run directory");
  check_cfg->excludes(check_dir);
  check->add_option("--out", out, "output directory for a fresh run");
  check->add_option("--seed-override", seed_override, "replace init.seed");

  auto* sweep = app.add_subcommand("sweep-eps", "eps -> 0 convergence sweep");
  sweep->add_option("--config", configs, "config file; repeat for one file per level")->required();
  sweep->add_option("--levels", levels, "comma separated eps levels applied to one config");
  sweep->add_option("--out", out, "output directory");
  sweep->add_option("--seed-override", seed_override, "replace init.seed");

  auto* twin = app.add_subcommand("twin", "twin-run separation against the exponential envelope");
  twin->add_option("--config", configs, "config file")->required()->expected(1);
  twin->add_option("--delta", delta, "perturbation size in the smoothed H1 norm");
  twin->add_option("--shape", shape, "random_band or single_mode");
  twin->add_option("--perturbation-seed", twin_seed, "seed of the random_band perturbation");
  twin->add_option("--out", out, "output directory");
  twin->add_option("--seed-override", seed_override, "replace init.seed");

  auto* gron = app.add_subcommand("gronwall", "logarithmic Gronwall check on a CSV series");
  gron->add_option("--csv", csv, "CSV with columns time,A,B,alpha,beta")->required();
  auto* k_opt = gron->add_option("--k", k, "constant K");
  auto* fit_opt = gron->add_flag("--fit-k", fit_k, "fit the minimal K");
  k_opt->excludes(fit_opt);
  gron->add_option("--k-min", k_min, "lower clip of the fitted K");
  gron->add_option("--tol", tol, "relative tolerance on margins");
  gron->add_option("--out", out, "directory for report files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  int status = TCM_OK;
  if (*run) {
    auto cfg = load(configs.front(), seed_override, status);
    if (!cfg) return status;
    return report(tcm_run(cfg.get(), opt_dir(out)));
  }
  if (*check) {
    if (!run_dir.empty()) return report(tcm_check(run_dir.c_str(), nullptr));
    if (configs.empty()) return usage_error("check needs --config or --run-dir");
    auto cfg = load(configs.front(), seed_override, status);
    if (!cfg) return status;
    return report(tcm_check_config(cfg.get(), opt_dir(out)));
  }
  if (*sweep) {
    std::vector<ConfigPtr> owned;
    for (const auto& c : configs) {
      auto cfg = load(c, seed_override, status);
      if (!cfg) return status;
      owned.push_back(std::move(cfg));
    }
    if (owned.size() > 1) {
      if (!levels.empty()) return usage_error("--levels cannot be combined with several --config");
      std::vector<const tcm_config*> ptrs;
      for (const auto& c : owned) ptrs.push_back(c.get());
      return report(tcm_sweep_eps(ptrs.data(), ptrs.size(), opt_dir(out)));
    }
    std::vector<double> eps;
    if (levels.empty()) {
      eps = {0.2, 0.1, 0.05, 0.0};
    } else {
      std::size_t pos = 0;
      while (pos <= levels.size()) {
        const auto next = levels.find(',', pos);
        const std::string item = levels.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        try {
          std::size_t used = 0;
          eps.push_back(std::stod(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
          return usage_error("bad eps level '" + item + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
      }
    }
    return report(tcm_sweep_eps_levels(owned.front().get(), eps.data(), eps.size(), opt_dir(out)));
  }
  if (*twin) {
    auto cfg = load(configs.front(), seed_override, status);
    if (!cfg) return status;
    return report(tcm_twin(cfg.get(), delta, shape.c_str(), twin_seed, opt_dir(out)));
  }
  if (*gron) {
    return report(tcm_gronwall(csv.c_str(), fit_k ? 1 : 0, k_opt->count() ? k : 0.0, k_min, tol,
                               opt_dir(out)));
  }
  return usage_error("no subcommand");
}
