#include "tcm/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tcm/derived.hpp"
#include "tcm/error.hpp"

namespace tcm::runner {
namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(ErrorKind::IoError, "cannot create directory '" + dir.string() + "'");
}

std::string flag(bool b) { return b ? "PASS" : "FAIL"; }

std::string summarize(const std::string& title, const std::vector<CheckResult>& checks, bool passed) {
  std::ostringstream o;
  o << title << "\n";
  for (const auto& c : checks) {
    o << "  " << (c.asserted ? flag(c.passed) : std::string("INFO")) << "  " << c.name
      << "  value=" << io::format_double(c.value);
    if (c.asserted) o << "  threshold=" << io::format_double(c.threshold);
    if (!c.detail.empty()) o << "  (" << c.detail << ")";
    o << "\n";
  }
  o << "overall: " << flag(passed) << "\n";
  return o.str();
}

void write_check_csv(const fs::path& path, const std::vector<CheckResult>& checks) {
  std::ostringstream o;
  o << "name,asserted,passed,value,threshold,detail\n";
  for (const auto& c : checks) {
    std::string detail = c.detail;
    std::replace(detail.begin(), detail.end(), ',', ';');
    o << c.name << "," << (c.asserted ? 1 : 0) << "," << (c.passed ? 1 : 0) << ","
      << io::format_double(c.value) << "," << io::format_double(c.threshold) << "," << detail
      << "\n";
  }
  io::write_text(path, o.str());
}

io::Manifest manifest_for(const io::ConfigFile& cfg, const std::string& start) {
  io::Manifest m;
  m.version = io::version();
  m.config = io::format_config(cfg);
  m.start_time = start;
  m.end_time = io::utc_timestamp();
  return m;
}

struct Window {
  double w = 0.0, phi = 0.0, flux = 0.0;
  std::size_t count = 0;
};

// Largest normalized residuals over the snapshot triples spaced at the
// finest stored interval.
Window residual_windows(const std::vector<State>& snaps, bool dealias_on) {
  Window out;
  double h_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < snaps.size(); ++i) h_min = std::min(h_min, snaps[i].t - snaps[i - 1].t);
  auto fine = [h_min](double h) { return std::abs(h - h_min) <= 1e-9 * h_min; };
  for (std::size_t i = 1; i + 1 < snaps.size(); ++i) {
    const double h1 = snaps[i].t - snaps[i - 1].t;
    const double h2 = snaps[i + 1].t - snaps[i].t;
    if (!fine(h1) || !fine(h2)) continue;
    out.w = std::max(out.w, residual_w_equation(snaps[i - 1], snaps[i], snaps[i + 1], dealias_on).normalized);
    out.phi = std::max(out.phi, residual_phi_equation(snaps[i - 1], snaps[i], snaps[i + 1], dealias_on).normalized);
    out.flux = std::max(out.flux, residual_flux_equation(snaps[i - 1], snaps[i], snaps[i + 1], dealias_on).normalized);
    ++out.count;
  }
  return out;
}

std::vector<CheckResult> run_checks(const io::ConfigFile& cfg,
                                    const std::vector<DiagnosticsRecord>& records,
                                    const std::vector<State>& snaps) {
  const io::CheckSettings& tol = cfg.check;
  const double eps = cfg.sim.eps;
  std::vector<CheckResult> checks;

  const auto energy = energy_identity_residual(records);
  checks.push_back({"energy_identity", true, std::abs(energy.final_value) <= tol.energy_tol,
                    std::abs(energy.final_value), tol.energy_tol, "relative residual at T"});

  const auto mp = max_principle_check(records);
  const double mp_floor = -tol.max_principle_tol * mp.theta0_linf;
  checks.push_back({"max_principle", eps > 0.0, mp.min_margin >= mp_floor, mp.min_margin, mp_floor,
                    eps > 0.0 ? "min margin" : "eps = 0: observational"});

  double div_max = 0.0;
  for (const auto& r : records) div_max = std::max(div_max, r.div_u_rel);
  checks.push_back({"divergence_free", true, div_max <= tol.div_tol, div_max, tol.div_tol,
                    "max ||div u||/||u||_H1"});

  const auto& r0 = records.front();
  double drift = 0.0;
  for (const auto& r : records) {
    drift = std::max(drift, std::abs(r.theta_mean - r0.theta_mean) / (1.0 + r0.theta_l2));
    drift = std::max(drift, std::abs(r.u1_mean - r0.u1_mean) / (1.0 + r0.u_l2));
    drift = std::max(drift, std::abs(r.u2_mean - r0.u2_mean) / (1.0 + r0.u_l2));
  }
  checks.push_back({"mean_conservation", true, drift <= tol.mean_tol, drift, tol.mean_tol,
                    "max relative drift of theta and u means"});

  bool ab_ok = true;
  double ab_min = std::numeric_limits<double>::infinity();
  for (const auto& r : records) {
    ab_ok = ab_ok && r.A >= 1.0 && r.B >= std::numbers::e;
    ab_min = std::min(ab_min, std::min(r.A - 1.0, r.B - std::numbers::e));
  }
  checks.push_back({"functionals_A_B", true, ab_ok, ab_min, 0.0, "min(A - 1, B - e)"});

  const Window win = residual_windows(snaps, cfg.sim.dealias);
  const std::string wdetail = std::to_string(win.count) + " windows";
  const bool have = win.count > 0;
  checks.push_back({"residual_w_equation", have, win.w <= tol.residual_tol, win.w, tol.residual_tol,
                    have ? wdetail : "fewer than 3 equally spaced snapshots"});
  checks.push_back({"residual_phi_equation", have, win.phi <= tol.residual_tol, win.phi,
                    tol.residual_tol, have ? wdetail : "fewer than 3 equally spaced snapshots"});
  checks.push_back({"residual_flux_equation", have, win.flux <= tol.residual_tol, win.flux,
                    tol.residual_tol, have ? wdetail : "fewer than 3 equally spaced snapshots"});

  auto series = h1_temperature_functionals(records);
  CheckResult gr{"gronwall_conclusion", true, false, 0.0, 0.0, ""};
  try {
    const auto fit = gronwall::fit_min_K(series);
    series.K = fit.K;
    const auto cc = gronwall::conclusion_check(series, tol.gronwall_tol);
    gr.passed = cc.outcome == gronwall::Outcome::holds;
    gr.value = fit.K;
    gr.detail = std::string("fitted K; outcome ") + gronwall::to_string(cc.outcome) +
                (fit.clipped ? "; K clipped at K_min" : "");
  } catch (const Error& e) {
    gr.detail = e.what();
  }
  checks.push_back(gr);

  const auto lip = lipschitz_budget(records);
  checks.push_back({"lipschitz_budget", true, std::isfinite(lip.budget), lip.budget, 0.0,
                    "int ||grad u||_inf; t^1/2 coefficient " + io::format_double(lip.sqrt_coefficient)});

  std::size_t blocking = 0;
  double l4_max = 0.0;
  for (const auto& r : records) {
    blocking += r.blocking ? 1 : 0;
    l4_max = std::max(l4_max, r.theta_l4);
  }
  checks.push_back({"theta_tail_blocking", false, true, static_cast<double>(blocking), 0.0,
                    "records with tail fraction above 1%"});
  checks.push_back({"theta_l4_max", false, true, l4_max, 0.0, "sup ||theta||_4"});
  return checks;
}

CommandResult finish_check(const fs::path& dir, std::vector<CheckResult> checks) {
  CommandResult res;
  res.checks = std::move(checks);
  for (const auto& c : res.checks)
    if (c.asserted && !c.passed) res.passed = false;
  res.summary = summarize("check " + dir.string(), res.checks, res.passed);
  io::write_text(dir / "check_report.txt", res.summary);
  write_check_csv(dir / "check_report.csv", res.checks);
  res.files = {"check_report.txt", "check_report.csv"};
  return res;
}

}  // namespace

fs::path resolve_output(const io::ConfigFile& cfg, const fs::path& out) {
  if (!out.empty()) return out;
  if (!cfg.sim.output_dir.empty()) return cfg.sim.output_dir;
  return "tcm_out";
}

CommandResult cmd_run(const io::ConfigFile& cfg, const fs::path& out) {
  cfg.sim.validate();
  const fs::path dir = resolve_output(cfg, out);
  ensure_dir(dir / "snapshots");
  const std::string start = io::utc_timestamp();

  CommandResult res;
  io::write_text(dir / "config.txt", io::format_config(cfg));
  res.files.push_back("config.txt");

  SimulateOptions opts;
  opts.keep_snapshots = false;
  // A window of adjacent steps at mid-run for the derived-equation residuals.
  const auto [steps, dt] = step_plan(cfg.sim);
  if (steps >= 2) {
    const std::size_t m = steps / 2;
    opts.extra_snapshot_steps = {m - 1, m, m + 1};
  }
  opts.on_snapshot = [&](std::size_t step, const State& s) {
    for (const auto& p : io::write_snapshot(dir / "snapshots", step, s))
      res.files.push_back(fs::relative(p, dir).generic_string());
  };
  const Trajectory traj = simulate(cfg.sim, opts);
  io::write_diagnostics_csv(dir / "diagnostics.csv", traj.records);
  res.files.push_back("diagnostics.csv");
  io::write_manifest(dir, manifest_for(cfg, start), res.files);

  std::ostringstream o;
  o << "run complete: " << traj.steps << " steps, dt=" << io::format_double(traj.dt) << ", "
    << traj.records.size() << " records, output " << dir.string() << "\n";
  res.summary = o.str();
  return res;
}

CommandResult cmd_check_dir(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorKind::IoError, "'" + dir.string() + "' is not a run directory");
  io::verify_manifest(dir);
  const io::ConfigFile cfg = io::load_config(dir / "config.txt");
  const auto records = io::read_diagnostics_csv(dir / "diagnostics.csv");
  std::vector<State> snaps;
  for (std::size_t step : io::list_snapshot_steps(dir / "snapshots"))
    snaps.push_back(io::read_snapshot(dir / "snapshots", step));
  return finish_check(dir, run_checks(cfg, records, snaps));
}

CommandResult cmd_check_config(const io::ConfigFile& cfg, const fs::path& out) {
  const fs::path dir = resolve_output(cfg, out);
  cmd_run(cfg, dir);
  return cmd_check_dir(dir);
}

CommandResult cmd_check(const fs::path& source, const fs::path& out) {
  if (fs::is_directory(source)) return cmd_check_dir(source);
  return cmd_check_config(io::load_config(source), out);
}

CommandResult cmd_sweep_eps(const std::vector<io::ConfigFile>& levels, const fs::path& out) {
  if (levels.empty()) throw Error(ErrorKind::ConfigParse, "sweep needs at least one level");
  const std::string start = io::utc_timestamp();
  std::vector<SimConfig> sims;
  for (const auto& l : levels) sims.push_back(l.sim);
  const SweepReport rep = epsilon_sweep(sims);
  const fs::path dir = resolve_output(levels.front(), out);
  ensure_dir(dir);

  std::vector<double> eps, vel, th;
  for (const auto& l : rep.levels) {
    eps.push_back(l.eps);
    vel.push_back(l.velocity_distance);
    th.push_back(l.theta_distance);
  }
  io::write_csv(dir / "sweep.csv", {"eps", "velocity_distance", "theta_distance"}, {eps, vel, th});

  CommandResult res;
  std::ostringstream o;
  o << "eps sweep against eps=" << io::format_double(rep.reference_eps) << "\n";
  for (const auto& l : rep.levels)
    o << "  eps=" << io::format_double(l.eps) << "  velocity L2(H1)=" << io::format_double(l.velocity_distance)
      << "  theta L2(L2)=" << io::format_double(l.theta_distance) << "\n";
  if (rep.levels.size() < 2) {
    o << "verdict: degenerate (fewer than two positive levels)\n";
  } else {
    o << "verdict: " << (rep.strictly_decreasing ? "strictly decreasing" : "not monotone") << "\n";
    o << "log-log slope: velocity " << io::format_double(rep.velocity_slope) << ", theta "
      << io::format_double(rep.theta_slope) << "\n";
  }
  res.summary = o.str();
  res.checks.push_back({"sweep_monotone", false, rep.strictly_decreasing,
                        rep.strictly_decreasing ? 1.0 : 0.0, 0.0, "observational"});
  io::write_text(dir / "sweep_report.txt", res.summary);
  res.files = {"sweep.csv", "sweep_report.txt"};
  io::write_manifest(dir, manifest_for(levels.front(), start), res.files);
  return res;
}

CommandResult cmd_twin(const io::ConfigFile& cfg, double delta, PerturbationShape shape,
                       std::uint64_t seed, const fs::path& out) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw Error(ErrorKind::ConfigParse, "delta must be a nonnegative number");
  const std::string start = io::utc_timestamp();
  const TwinReport rep = twin_divergence(cfg.sim, delta, shape, seed);
  const fs::path dir = resolve_output(cfg, out);
  ensure_dir(dir);
  io::write_csv(dir / "twin.csv",
                {"t", "separation", "coefficient", "coefficient_integral", "log_envelope"},
                {rep.times, rep.separation, rep.coefficient, rep.coefficient_integral, rep.log_envelope});

  CommandResult res;
  double sep_max = 0.0;
  for (double s : rep.separation) sep_max = std::max(sep_max, s);
  res.checks.push_back({"twin_envelope", true, rep.envelope_holds, sep_max, 0.0,
                        rep.envelope_holds ? "separation below envelope at every record"
                                           : "exceeded at record " + std::to_string(rep.first_violation)});
  res.passed = rep.envelope_holds;
  std::ostringstream o;
  o << "twin run: delta=" << io::format_double(delta) << " shape=" << to_string(shape)
    << " safety=" << io::format_double(rep.safety) << "\n"
    << "  separation(0)=" << io::format_double(rep.separation.front())
    << "  separation(T)=" << io::format_double(rep.separation.back())
    << "  max separation=" << io::format_double(sep_max) << "\n"
    << "  int c=" << io::format_double(rep.coefficient_integral.back())
    << "  log envelope(T)=" << io::format_double(rep.log_envelope.back()) << "\n"
    << "envelope: " << flag(rep.envelope_holds) << "\n";
  res.summary = o.str();
  io::write_text(dir / "twin_report.txt", res.summary);
  res.files = {"twin.csv", "twin_report.txt"};
  io::write_manifest(dir, manifest_for(cfg, start), res.files);
  return res;
}

CommandResult cmd_gronwall(const fs::path& csv, const GronwallOptions& options, const fs::path& out) {
  gronwall::Series g = io::read_gronwall_csv(csv);
  CommandResult res;
  std::ostringstream o;
  if (options.fit) {
    const auto fit = gronwall::fit_min_K(g, options.k_min);
    g.K = fit.K;
    o << "fitted K=" << io::format_double(fit.K) << " at sample " << fit.argmax
      << (fit.clipped ? " (clipped at K_min)" : "") << "\n";
  } else {
    g.K = options.K.value_or(1.0);
    if (!(g.K > 0.0)) throw Error(ErrorKind::ConfigParse, "K must be positive");
    o << "K=" << io::format_double(g.K) << "\n";
  }
  const auto rep = gronwall::conclusion_check(g, options.tol);
  const auto& h = rep.hypothesis;
  const double min_margin = *std::min_element(h.margin.begin(), h.margin.end());
  o << "hypothesis: " << (h.all_hold ? "holds" : "fails at sample " + std::to_string(h.first_failure))
    << "  min margin=" << io::format_double(min_margin) << "\n";
  o << "Q(T)=" << io::format_double(rep.q.back()) << "\n";
  o << "conclusion: " << gronwall::to_string(rep.outcome) << "\n";
  if (!rep.message.empty()) o << "  " << rep.message << "\n";
  res.summary = o.str();
  res.passed = rep.outcome == gronwall::Outcome::holds;
  res.checks.push_back({"gronwall_conclusion", true, res.passed, g.K, 0.0, gronwall::to_string(rep.outcome)});
  if (!out.empty()) {
    ensure_dir(out);
    std::vector<double> lhs = rep.lhs, log_rhs = rep.log_rhs;
    lhs.resize(g.size(), std::nan(""));
    log_rhs.resize(g.size(), std::nan(""));
    io::write_csv(out / "gronwall_report.csv", {"time", "margin", "scale", "Q", "lhs", "log_rhs"},
                  {g.times, h.margin, h.scale, rep.q, lhs, log_rhs});
    io::write_text(out / "gronwall_report.txt", res.summary);
    res.files = {"gronwall_report.csv", "gronwall_report.txt"};
  }
  return res;
}

}  // namespace tcm::runner
