#include "tcm/records.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tcm/derived.hpp"
#include "tcm/error.hpp"
#include "tcm/operators.hpp"

namespace tcm {

const std::vector<std::string_view>& record_columns() {
  static const std::vector<std::string_view> cols = {
      "t",           "eps",           "energy",        "dissipation",
      "u_l2",        "v_l2",          "theta_l2",      "theta_l4",
      "theta_linf",  "grad_theta_l2", "lap_theta_l2",  "grad_u_l2",
      "grad_v_l2",   "grad_w_l2",     "lap_u_l2",      "lap_w_l2",
      "grad_lap_u_l2", "grad_lap_w_l2", "grad_u_l4",   "grad_w_l4",
      "grad_u_linf", "phi_linf",      "A",             "B",
      "theta_tail_fraction", "theta_mean", "u1_mean",  "u2_mean",
      "div_u_rel",   "blocking"};
  return cols;
}

std::vector<double> record_values(const DiagnosticsRecord& r) {
  return {r.t,           r.eps,           r.energy,       r.dissipation,
          r.u_l2,        r.v_l2,          r.theta_l2,     r.theta_l4,
          r.theta_linf,  r.grad_theta_l2, r.lap_theta_l2, r.grad_u_l2,
          r.grad_v_l2,   r.grad_w_l2,     r.lap_u_l2,     r.lap_w_l2,
          r.grad_lap_u_l2, r.grad_lap_w_l2, r.grad_u_l4,  r.grad_w_l4,
          r.grad_u_linf, r.phi_linf,      r.A,            r.B,
          r.theta_tail_fraction, r.theta_mean, r.u1_mean, r.u2_mean,
          r.div_u_rel,   r.blocking ? 1.0 : 0.0};
}

DiagnosticsRecord record_from_values(const std::vector<double>& v) {
  if (v.size() != record_columns().size())
    throw Error(ErrorKind::IoError, "diagnostics row has " +
                                        std::to_string(v.size()) + " columns");
  DiagnosticsRecord r;
  std::size_t i = 0;
  for (double* field :
       {&r.t, &r.eps, &r.energy, &r.dissipation, &r.u_l2, &r.v_l2,
        &r.theta_l2, &r.theta_l4, &r.theta_linf, &r.grad_theta_l2,
        &r.lap_theta_l2, &r.grad_u_l2, &r.grad_v_l2, &r.grad_w_l2,
        &r.lap_u_l2, &r.lap_w_l2, &r.grad_lap_u_l2, &r.grad_lap_w_l2,
        &r.grad_u_l4, &r.grad_w_l4, &r.grad_u_linf, &r.phi_linf, &r.A, &r.B,
        &r.theta_tail_fraction, &r.theta_mean, &r.u1_mean, &r.u2_mean,
        &r.div_u_rel})
    *field = v[i++];
  r.blocking = v[i] != 0.0;
  return r;
}

namespace {

// Components d_i u^j of the gradient of a vector field.
std::array<SpectralField, 4> gradient_components(const VectorField& u) {
  return {derivative(u.x, Axis::x), derivative(u.x, Axis::y),
          derivative(u.y, Axis::x), derivative(u.y, Axis::y)};
}

double grad_l2(const VectorField& a) {
  NormAccumulator acc(NormKind::L2);
  for (const auto& c : gradient_components(a)) acc.add(c);
  return acc.value();
}

double grad_l4(const VectorField& a) {
  NormAccumulator acc(NormKind::L4);
  for (const auto& c : gradient_components(a)) acc.add(c);
  return acc.value();
}

double grad_lap_l2(const VectorField& a) {
  return grad_l2(laplacian(a));
}

}  // namespace

double grad_linf(const VectorField& u) {
  auto comps = gradient_components(u);
  std::vector<double> total(u.grid().physical_size(), 0.0);
  for (const auto& c : comps) {
    const SpectralField p = c.to_physical();
    auto s = p.samples();
    for (std::size_t i = 0; i < s.size(); ++i) total[i] += std::abs(s[i]);
  }
  return total.empty() ? 0.0 : *std::max_element(total.begin(), total.end());
}

double tail_fraction(const SpectralField& theta, bool dealias_on) {
  const SpectralField s = theta.to_spectral();
  const Grid& g = s.grid();
  const double kept = dealias_on ? g.n() / 3.0 : g.n() / 2.0;
  const double shell = 2.0 * kept / 3.0;
  auto c = s.coefficients();
  const int cols = g.columns();
  double total = 0.0, tail = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    const int ky = g.mode_y(row);
    for (int col = 0; col < cols; ++col) {
      const int kx = g.mode_x(col);
      if (kx == 0 && ky == 0) continue;
      const double e = g.column_weight(col) *
                       std::norm(c[static_cast<std::size_t>(row) * cols + col]);
      total += e;
      if (std::max(std::abs(kx), std::abs(ky)) > shell) tail += e;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

DiagnosticsRecord compute_record(const State& s, bool dealias_on) {
  DiagnosticsRecord r;
  r.t = s.t;
  r.eps = s.eps;

  SpectralField centered = s.theta.to_spectral();
  r.theta_mean = centered.mean();
  centered.coefficients()[0] = 0.0;

  VectorField w = grad_inv_neg_laplacian(centered);
  w *= w_factor(s.eps, WConvention::regularized);
  w += s.v;

  r.u_l2 = norm(s.u, NormKind::L2);
  r.v_l2 = norm(s.v, NormKind::L2);
  r.theta_l2 = norm(s.theta, NormKind::L2);
  r.energy = 0.5 * (r.u_l2 * r.u_l2 + r.v_l2 * r.v_l2 + r.theta_l2 * r.theta_l2);

  r.grad_u_l2 = grad_l2(s.u);
  r.grad_v_l2 = grad_l2(s.v);
  r.grad_w_l2 = grad_l2(w);
  r.grad_theta_l2 = norm(gradient(s.theta), NormKind::L2);
  r.dissipation = r.grad_u_l2 * r.grad_u_l2 + r.grad_v_l2 * r.grad_v_l2 +
                  s.eps * r.grad_theta_l2 * r.grad_theta_l2;

  r.theta_l4 = norm(s.theta, NormKind::L4);
  r.theta_linf = norm(s.theta, NormKind::Linf);
  r.lap_theta_l2 = norm(laplacian(s.theta), NormKind::L2);
  r.lap_u_l2 = norm(laplacian(s.u), NormKind::L2);
  r.lap_w_l2 = norm(laplacian(w), NormKind::L2);
  r.grad_lap_u_l2 = grad_lap_l2(s.u);
  r.grad_lap_w_l2 = grad_lap_l2(w);
  r.grad_u_l4 = grad_l4(s.u);
  r.grad_w_l4 = grad_l4(w);
  r.grad_u_linf = grad_linf(s.u);
  r.phi_linf = norm(viscous_flux(s), NormKind::Linf);

  r.A = r.grad_theta_l2 * r.grad_theta_l2 +
        s.t * (r.lap_u_l2 * r.lap_u_l2 + r.lap_w_l2 * r.lap_w_l2) + 1.0;
  r.B = r.A +
        s.t * (r.grad_lap_u_l2 * r.grad_lap_u_l2 +
               r.grad_lap_w_l2 * r.grad_lap_w_l2) +
        s.eps * r.lap_theta_l2 * r.lap_theta_l2 + std::numbers::e;

  r.theta_tail_fraction = tail_fraction(s.theta, dealias_on);
  r.blocking = r.theta_tail_fraction > kBlockingThreshold;

  r.u1_mean = s.u.x.mean();
  r.u2_mean = s.u.y.mean();
  const double h1 = norm(s.u, NormKind::H1);
  r.div_u_rel = h1 > 0.0 ? norm(divergence(s.u), NormKind::L2) / h1 : 0.0;
  return r;
}

}  // namespace tcm
