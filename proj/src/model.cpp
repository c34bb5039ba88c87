#include "tcm/model.hpp"

#include <algorithm>
#include <cmath>

#include "tcm/error.hpp"
#include "tcm/operators.hpp"

namespace tcm {

State::State(VectorField u_, VectorField v_, SpectralField theta_, double t_,
             double eps_)
    : u(std::move(u_)), v(std::move(v_)), theta(std::move(theta_)), t(t_),
      eps(eps_) {
  if (!(u.grid() == v.grid()) || !(u.grid() == theta.grid()))
    throw Error(ErrorKind::BadParams, "state fields on different grids");
}

const char* to_string(InitPreset p) {
  switch (p) {
    case InitPreset::taylor_green: return "taylor_green";
    case InitPreset::single_mode: return "single_mode";
    case InitPreset::random_band: return "random_band";
  }
  return "random_band";
}

InitPreset parse_preset(const std::string& name) {
  if (name == "taylor_green") return InitPreset::taylor_green;
  if (name == "single_mode") return InitPreset::single_mode;
  if (name == "random_band") return InitPreset::random_band;
  throw Error(ErrorKind::ConfigParse, "unknown initial-data preset '" + name + "'");
}

void SimConfig::validate() const {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::ConfigParse, msg);
  };
  if (n < 8 || n % 2 != 0) fail("grid.n must be even and >= 8");
  if (!(length > 0.0) || !std::isfinite(length)) fail("grid.length must be > 0");
  if (!(dt > 0.0) || !std::isfinite(dt)) fail("time.dt must be > 0");
  if (!(horizon >= 0.0) || !std::isfinite(horizon)) fail("time.horizon must be >= 0");
  if (!(eps >= 0.0 && eps < 0.5)) fail("model.eps must lie in [0, 1/2)");
  if (!(cfl_max > 0.0)) fail("time.cfl_max must be > 0");
  if (diagnostics_stride < 1) fail("output.diagnostics_stride must be >= 1");
  if (snapshot_stride < 1) fail("output.snapshot_stride must be >= 1");
}

namespace {

int resolved_limit(const Grid& g, bool dealias_on) {
  // Largest |k| kept: two-thirds band when dealiasing, Nyquist-free otherwise.
  return dealias_on ? g.n() / 3 : g.n() / 2 - 1;
}

void check_band(const Grid& g, int kmax, bool dealias_on) {
  if (kmax > resolved_limit(g, dealias_on))
    throw Error(ErrorKind::BadParams,
                "initial band k <= " + std::to_string(kmax) +
                    " outside resolved modes (limit " +
                    std::to_string(resolved_limit(g, dealias_on)) + ")");
}

}  // namespace

State make_initial(const InitParams& p, const Grid& grid, double eps,
                   bool dealias_on) {
  State s(grid);
  s.eps = eps;
  const double kappa = 2.0 * std::numbers::pi / grid.length();
  switch (p.preset) {
    case InitPreset::taylor_green: {
      check_band(grid, 1, dealias_on);
      const double a = p.amplitude;
      s.u = VectorField(
          SpectralField::from_function(grid, [&](double x, double y) {
            return a * std::sin(kappa * x) * std::cos(kappa * y);
          }),
          SpectralField::from_function(grid, [&](double x, double y) {
            return -a * std::cos(kappa * x) * std::sin(kappa * y);
          }));
      break;
    }
    case InitPreset::single_mode: {
      const int mx = p.mode_x, my = p.mode_y;
      if (mx == 0 && my == 0)
        throw Error(ErrorKind::BadParams, "single_mode needs a nonzero wavevector");
      check_band(grid, std::max(std::abs(mx), std::abs(my)), dealias_on);
      const double km = std::hypot(mx, my);
      auto phase = [=](double x, double y) { return kappa * (mx * x + my * y); };
      s.theta = SpectralField::from_function(grid, [&](double x, double y) {
        return p.amp_theta * std::sin(phase(x, y));
      });
      s.u = VectorField(
          SpectralField::from_function(grid, [&](double x, double y) {
            return -p.amp_u * my / km * std::cos(phase(x, y));
          }),
          SpectralField::from_function(grid, [&](double x, double y) {
            return p.amp_u * mx / km * std::cos(phase(x, y));
          }));
      s.v = VectorField(
          SpectralField::from_function(grid, [&](double x, double y) {
            return p.amp_v * mx / km * std::cos(phase(x, y));
          }),
          SpectralField::from_function(grid, [&](double x, double y) {
            return p.amp_v * my / km * std::cos(phase(x, y));
          }));
      break;
    }
    case InitPreset::random_band: {
      if (p.kmin < 1 || p.kmax < p.kmin)
        throw Error(ErrorKind::BadParams, "random_band needs 1 <= kmin <= kmax");
      check_band(grid, p.kmax, dealias_on);
      BandSampler sampler(p.seed);
      s.u = sampler.solenoidal(grid, p.kmin, p.kmax, p.rms_u);
      s.v = sampler.vector(grid, p.kmin, p.kmax, p.rms_v);
      s.theta = sampler.scalar(grid, p.kmin, p.kmax, p.rms_theta);
      break;
    }
  }
  s.u = leray_project(s.u);
  s.v = VectorField(s.v.x.to_spectral(), s.v.y.to_spectral());
  s.theta = s.theta.to_spectral();
  if (dealias_on) {
    s.u = dealias(s.u);
    s.v = dealias(s.v);
    s.theta = dealias(s.theta);
  }
  return s;
}

Tendency explicit_part(const State& s, bool dz) {
  const VectorField& u = s.u;
  const VectorField& v = s.v;

  // div(v (x) v)_i = d_j (v^j v^i)
  const SpectralField vxx = multiply(v.x, v.x, dz);
  const SpectralField vxy = multiply(v.x, v.y, dz);
  const SpectralField vyy = multiply(v.y, v.y, dz);
  VectorField div_vv(derivative(vxx, Axis::x) + derivative(vxy, Axis::y),
                     derivative(vxy, Axis::x) + derivative(vyy, Axis::y));

  VectorField nu = advect(u, u, dz);
  nu += div_vv;
  nu *= -1.0;
  nu = leray_project(nu);

  VectorField nv = advect(u, v, dz);
  nv += advect(v, u, dz);
  nv += gradient(s.theta);
  nv *= -1.0;

  SpectralField nth = advect(u, s.theta, dz) + divergence(v);
  nth *= -1.0;

  return Tendency{std::move(nu), std::move(nv), std::move(nth)};
}

Tendency rhs(const State& s, bool dz) {
  Tendency t = explicit_part(s, dz);
  t.du += laplacian(s.u);
  t.dv += laplacian(s.v);
  t.dtheta += s.eps * laplacian(s.theta);
  return t;
}

double cfl_ratio(const State& s, double dt) {
  const double speed =
      std::max(norm(s.u, NormKind::Linf), norm(s.v, NormKind::Linf));
  return dt * speed / s.grid().spacing();
}

namespace {

// a y + b n per mode, with a = (1 + dt/2 lam)/(1 - dt/2 lam),
// b = dt/(1 - dt/2 lam) and lam = -nu |k|^2.
SpectralField cn_update(const SpectralField& y, const SpectralField& n,
                        double dt, double nu) {
  SpectralField out = y.to_spectral();
  const SpectralField ns = n.to_spectral();
  const Grid& g = out.grid();
  auto c = out.coefficients();
  auto cn = ns.coefficients();
  const int cols = g.columns();
  for (int row = 0; row < g.n(); ++row) {
    const double ky = g.wavenumber(g.mode_y(row));
    for (int col = 0; col < cols; ++col) {
      const double kx = g.wavenumber(g.mode_x(col));
      const double lam = -nu * (kx * kx + ky * ky);
      const double denom = 1.0 - 0.5 * dt * lam;
      const double a = (1.0 + 0.5 * dt * lam) / denom;
      const double b = dt / denom;
      const std::size_t idx = static_cast<std::size_t>(row) * cols + col;
      c[idx] = a * c[idx] + b * cn[idx];
    }
  }
  return out;
}

State advance(const State& s, const Tendency& n, double dt) {
  State out(leray_project(VectorField(cn_update(s.u.x, n.du.x, dt, 1.0),
                                      cn_update(s.u.y, n.du.y, dt, 1.0))),
            VectorField(cn_update(s.v.x, n.dv.x, dt, 1.0),
                        cn_update(s.v.y, n.dv.y, dt, 1.0)),
            cn_update(s.theta, n.dtheta, dt, s.eps), s.t + dt, s.eps);
  return out;
}

}  // namespace

State imex_step(const State& s, double dt, const StepOptions& options) {
  if (!(dt > 0.0)) throw Error(ErrorKind::BadParams, "dt must be positive");
  const double ratio = cfl_ratio(s, dt);
  if (ratio > options.cfl_max) throw CflError(ratio, options.cfl_max);

  const Tendency n0 = explicit_part(s, options.dealias);
  const State stage = advance(s, n0, dt);
  const Tendency n1 = explicit_part(stage, options.dealias);

  Tendency avg{0.5 * (n0.du + n1.du), 0.5 * (n0.dv + n1.dv),
               0.5 * (n0.dtheta + n1.dtheta)};
  return advance(s, avg, dt);
}

}  // namespace tcm
