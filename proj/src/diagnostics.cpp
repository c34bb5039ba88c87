#include "tcm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

#include "tcm/derived.hpp"
#include "tcm/error.hpp"
#include "tcm/operators.hpp"

namespace tcm {
namespace {

void require_records(const std::vector<DiagnosticsRecord>& r) {
  if (r.empty()) throw Error(ErrorKind::EmptyTrajectory, "trajectory has no records");
}

std::vector<double> times_of(const std::vector<DiagnosticsRecord>& r) {
  std::vector<double> t;
  t.reserve(r.size());
  for (const auto& rec : r) t.push_back(rec.t);
  return t;
}

template <class F>
std::vector<double> column(const std::vector<DiagnosticsRecord>& r, F f) {
  std::vector<double> out;
  out.reserve(r.size());
  for (const auto& rec : r) out.push_back(f(rec));
  return out;
}

double sq(double x) { return x * x; }

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  if (x.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
}

}  // namespace

EnergyResidual energy_identity_residual(const std::vector<DiagnosticsRecord>& records) {
  require_records(records);
  EnergyResidual out;
  out.times = times_of(records);
  const auto diss = column(records, [](const auto& r) { return r.dissipation; });
  const auto integral = gronwall::cumulative_trapezoid(out.times, diss);
  const double e0 = records.front().energy;
  out.residual.resize(records.size(), 0.0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (e0 > 0.0)
      out.residual[i] = (records[i].energy + integral[i] - e0) / e0;
    out.max_abs = std::max(out.max_abs, std::abs(out.residual[i]));
  }
  out.final_value = out.residual.back();
  return out;
}

MaxPrincipleReport max_principle_check(const std::vector<DiagnosticsRecord>& records) {
  require_records(records);
  MaxPrincipleReport out;
  out.times = times_of(records);
  const auto phi = column(records, [](const auto& r) { return r.phi_linf; });
  const auto integral = gronwall::cumulative_trapezoid(out.times, phi);
  out.theta0_linf = records.front().theta_linf;
  out.margin.resize(records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    out.margin[i] = out.theta0_linf + integral[i] - records[i].theta_linf;
  out.min_margin = *std::min_element(out.margin.begin(), out.margin.end());
  return out;
}

gronwall::Series h1_temperature_functionals(const std::vector<DiagnosticsRecord>& records) {
  require_records(records);
  gronwall::Series g;
  g.K = 1.0;
  const double h = records.size() > 1 ? records[1].t - records[0].t : 1.0;
  for (const auto& r : records) {
    const double t = r.t;
    const double grad_u_h1_sq = sq(r.grad_u_l2) + sq(r.lap_u_l2);
    const double t_eff = std::max(t, 0.5 * h);
    const double m =
        sq(r.lap_u_l2) + sq(r.lap_w_l2) + sq(r.grad_w_l2) + sq(r.u_l2) + sq(r.v_l2) +
        sq(r.theta_l4) +
        (1.0 + std::sqrt(grad_u_h1_sq)) *
            std::sqrt(std::log((1.0 + 1.0 / t_eff) * (1.0 + sq(r.grad_u_l2))));
    const double gt =
        (t + 1.0) * (std::pow(r.grad_u_l4, 4) + std::pow(r.grad_w_l4, 4) +
                     std::pow(r.theta_l4, 4) + sq(r.grad_v_l2) + sq(r.lap_u_l2) +
                     sq(r.lap_w_l2));
    g.times.push_back(t);
    g.A.push_back(r.A);
    g.B.push_back(r.B);
    g.alpha.push_back((t + 1.0) * m + sq(t + 1.0) * (1.0 + grad_u_h1_sq));
    g.beta.push_back(gt);
  }
  return g;
}

LipschitzReport lipschitz_budget(const std::vector<DiagnosticsRecord>& records) {
  require_records(records);
  LipschitzReport out;
  out.times = times_of(records);
  const auto f = column(records, [](const auto& r) { return r.grad_u_linf; });
  out.cumulative = gronwall::cumulative_trapezoid(out.times, f);
  out.budget = out.cumulative.back();
  double num = 0.0, den = 0.0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    const double t = out.times[i];
    if (t <= 0.0) continue;
    num += out.cumulative[i] * std::sqrt(t);
    den += t;
    if (out.cumulative[i] > 0.0) {
      lx.push_back(std::log(t));
      ly.push_back(std::log(out.cumulative[i]));
    }
  }
  out.sqrt_coefficient = den > 0.0 ? num / den : 0.0;
  out.loglog_exponent = slope(lx, ly);
  return out;
}

double bgw_ratio(const VectorField& u) {
  const double top = grad_linf(u);
  if (top == 0.0) return 0.0;
  NormAccumulator h1(NormKind::H1), h2(NormKind::H2);
  for (Axis a : {Axis::x, Axis::y}) {
    h1.add(derivative(u.x, a)).add(derivative(u.y, a));
    h2.add(derivative(u.x, a)).add(derivative(u.y, a));
  }
  return top / ((1.0 + h1.value()) * std::sqrt(std::log(std::numbers::e + sq(h2.value()))));
}

double commutator_estimate_ratio(const VectorField& u, const SpectralField& theta,
                                 bool dealias_on) {
  NormAccumulator g(NormKind::L2);
  for (Axis a : {Axis::x, Axis::y}) g.add(derivative(u.x, a)).add(derivative(u.y, a));
  const double den = g.value() * norm(theta, NormKind::L2);
  if (den == 0.0) return 0.0;
  return norm(commutator_F(u, theta, dealias_on), NormKind::L2) / den;
}

const char* to_string(PerturbationShape s) {
  return s == PerturbationShape::single_mode ? "single_mode" : "random_band";
}

PerturbationShape parse_shape(const std::string& name) {
  if (name == "random_band") return PerturbationShape::random_band;
  if (name == "single_mode") return PerturbationShape::single_mode;
  throw Error(ErrorKind::ConfigParse, "unknown perturbation shape '" + name + "'");
}

double low_norm_separation(const State& a, const State& b) {
  NormAccumulator acc(NormKind::H1);
  acc.add(smoothing_inverse(a.u.x - b.u.x))
      .add(smoothing_inverse(a.u.y - b.u.y))
      .add(smoothing_inverse(a.v.x - b.v.x))
      .add(smoothing_inverse(a.v.y - b.v.y))
      .add(smoothing_inverse(a.theta - b.theta));
  return acc.value();
}

State make_perturbation(const SimConfig& cfg, double delta, PerturbationShape shape,
                        std::uint64_t seed) {
  const Grid grid = cfg.grid();
  State p(grid);
  p.eps = cfg.eps;
  if (delta == 0.0) return p;
  if (shape == PerturbationShape::single_mode) {
    const double k = 2.0 * std::numbers::pi / grid.length();
    p.u.y = SpectralField::from_function(grid, [k](double x, double) { return std::cos(k * x); });
    p.v.x = SpectralField::from_function(grid, [k](double x, double) { return std::cos(k * x); });
    p.theta = SpectralField::from_function(grid, [k](double x, double) { return std::sin(k * x); });
  } else {
    const int limit = cfg.dealias ? grid.n() / 3 : grid.n() / 2 - 1;
    const int kmax = std::min(cfg.init.kmax, limit);
    const int kmin = std::min(std::max(cfg.init.kmin, 1), kmax);
    BandSampler sampler(seed);
    p.u = sampler.solenoidal(grid, kmin, kmax, 1.0);
    p.v = sampler.vector(grid, kmin, kmax, 1.0);
    p.theta = sampler.scalar(grid, kmin, kmax, 1.0);
  }
  p.u = leray_project(p.u);
  if (cfg.dealias) {
    p.u = dealias(p.u);
    p.v = dealias(p.v);
    p.theta = dealias(p.theta);
  }
  const double size = low_norm_separation(p, State(grid));
  const double scale = delta / size;
  p.u *= scale;
  p.v *= scale;
  p.theta *= scale;
  return p;
}

TwinReport twin_divergence(const SimConfig& cfg, double delta, PerturbationShape shape,
                           std::uint64_t seed, double safety) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw Error(ErrorKind::BadParams, "twin delta must be nonnegative");
  cfg.validate();
  SimConfig run_cfg = cfg;
  run_cfg.snapshot_stride = cfg.diagnostics_stride;

  const State base = make_initial(cfg.init, cfg.grid(), cfg.eps, cfg.dealias);
  State perturbed = base;
  if (delta > 0.0) {
    const State p = make_perturbation(cfg, delta, shape, seed);
    perturbed.u += p.u;
    perturbed.v += p.v;
    perturbed.theta += p.theta;
  }

  SimulateOptions o1, o2;
  o1.initial = &base;
  o2.initial = &perturbed;
  auto f1 = std::async(std::launch::async, [&] { return simulate(run_cfg, o1); });
  auto f2 = std::async(std::launch::async, [&] { return simulate(run_cfg, o2); });
  const Trajectory t1 = f1.get();
  const Trajectory t2 = f2.get();

  TwinReport rep;
  rep.delta = delta;
  rep.safety = safety;
  const std::size_t n = std::min(t1.records.size(), t1.snapshots.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r1 = t1.records[i];
    const auto& r2 = t2.records[i];
    const double low = sq(r1.u_l2) + sq(r2.u_l2) + sq(r1.v_l2) + sq(r2.v_l2);
    const double grad = sq(r1.grad_u_l2) + sq(r2.grad_u_l2) + sq(r1.grad_v_l2) + sq(r2.grad_v_l2);
    const double c = 1.0 + sq(r2.theta_linf) + r1.grad_u_linf + low * grad +
                     sq(sq(r2.grad_u_l2) + sq(r1.grad_v_l2));
    rep.times.push_back(r1.t);
    rep.coefficient.push_back(c);
    rep.separation.push_back(low_norm_separation(t1.snapshots[i], t2.snapshots[i]));
  }
  rep.coefficient_integral = gronwall::cumulative_trapezoid(rep.times, rep.coefficient);
  // Compared in log space: int c is routinely far beyond the double range.
  for (std::size_t i = 0; i < n; ++i) {
    const double log_env = std::log(safety * delta) + rep.coefficient_integral[i];
    rep.log_envelope.push_back(log_env);
    rep.envelope.push_back(std::exp(log_env));
    const bool ok = rep.separation[i] == 0.0 || std::log(rep.separation[i]) <= log_env;
    if (!ok && rep.envelope_holds) {
      rep.envelope_holds = false;
      rep.first_violation = i;
    }
  }
  return rep;
}

namespace {

bool same_except_eps(const SimConfig& a, const SimConfig& b) {
  const InitParams& p = a.init;
  const InitParams& q = b.init;
  return a.n == b.n && a.length == b.length && a.dt == b.dt && a.horizon == b.horizon &&
         a.cfl_max == b.cfl_max && a.dealias == b.dealias &&
         a.diagnostics_stride == b.diagnostics_stride && p.preset == q.preset &&
         p.amplitude == q.amplitude && p.mode_x == q.mode_x && p.mode_y == q.mode_y &&
         p.amp_u == q.amp_u && p.amp_v == q.amp_v && p.amp_theta == q.amp_theta &&
         p.kmin == q.kmin && p.kmax == q.kmax && p.rms_u == q.rms_u && p.rms_v == q.rms_v &&
         p.rms_theta == q.rms_theta && p.seed == q.seed;
}

}  // namespace

std::vector<SimConfig> sweep_configs(const SimConfig& base, const std::vector<double>& levels) {
  std::vector<SimConfig> out;
  for (double e : levels) {
    SimConfig c = base;
    c.eps = e;
    out.push_back(c);
  }
  return out;
}

SweepReport epsilon_sweep(const std::vector<SimConfig>& configs) {
  if (configs.empty()) throw Error(ErrorKind::BadParams, "sweep needs at least one level");
  for (const auto& c : configs) {
    c.validate();
    if (!same_except_eps(configs.front(), c))
      throw Error(ErrorKind::ConfigMismatch, "sweep levels differ in more than eps");
  }
  std::size_t ref = 0;
  for (std::size_t i = 1; i < configs.size(); ++i)
    if (configs[i].eps < configs[ref].eps) ref = i;

  std::vector<std::future<Trajectory>> runs;
  for (const auto& c : configs) {
    SimConfig rc = c;
    rc.snapshot_stride = rc.diagnostics_stride;
    runs.push_back(std::async(std::launch::async, [rc] { return simulate(rc); }));
  }
  std::vector<Trajectory> traj;
  for (auto& f : runs) traj.push_back(f.get());

  SweepReport rep;
  rep.reference_eps = configs[ref].eps;
  const Trajectory& r0 = traj[ref];
  std::vector<double> times;
  for (const auto& s : r0.snapshots) times.push_back(s.t);

  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (configs[i].eps == rep.reference_eps) continue;
    std::vector<double> vel, th;
    for (std::size_t k = 0; k < times.size(); ++k) {
      const State& a = traj[i].snapshots[k];
      const State& b = r0.snapshots[k];
      NormAccumulator h1(NormKind::H1);
      h1.add(a.u.x - b.u.x).add(a.u.y - b.u.y).add(a.v.x - b.v.x).add(a.v.y - b.v.y);
      vel.push_back(sq(h1.value()));
      th.push_back(sq(norm(a.theta - b.theta, NormKind::L2)));
    }
    SweepLevel level;
    level.eps = configs[i].eps;
    level.velocity_distance = std::sqrt(gronwall::cumulative_trapezoid(times, vel).back());
    level.theta_distance = std::sqrt(gronwall::cumulative_trapezoid(times, th).back());
    for (const auto& r : traj[i].records) level.max_energy = std::max(level.max_energy, r.energy);
    rep.levels.push_back(level);
  }
  std::sort(rep.levels.begin(), rep.levels.end(),
            [](const SweepLevel& a, const SweepLevel& b) { return a.eps > b.eps; });
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    if (!(rep.levels[i].velocity_distance < rep.levels[i - 1].velocity_distance) ||
        !(rep.levels[i].theta_distance < rep.levels[i - 1].theta_distance))
      rep.strictly_decreasing = false;
  }
  std::vector<double> le, lv, lt;
  for (const auto& l : rep.levels) {
    if (l.velocity_distance > 0.0 && l.theta_distance > 0.0) {
      le.push_back(std::log(l.eps));
      lv.push_back(std::log(l.velocity_distance));
      lt.push_back(std::log(l.theta_distance));
    }
  }
  rep.velocity_slope = slope(le, lv);
  rep.theta_slope = slope(le, lt);
  return rep;
}

}  // namespace tcm
