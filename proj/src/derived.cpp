#include "tcm/derived.hpp"

#include <cmath>
#include <initializer_list>

#include "tcm/error.hpp"
#include "tcm/operators.hpp"

namespace tcm {
namespace {

void require_eps(double eps) {
  if (!(eps < 1.0) || !(eps >= 0.0))
    throw Error(ErrorKind::EpsOutOfRange,
                "eps must lie in [0, 1), got " + std::to_string(eps));
}

void check_window(const State& a, const State& b, const State& c) {
  if (!(a.grid() == b.grid()) || !(b.grid() == c.grid()))
    throw Error(ErrorKind::BadWindow, "snapshots on different grids");
  if (a.eps != b.eps || b.eps != c.eps)
    throw Error(ErrorKind::BadWindow, "snapshots carry different eps");
  const double h1 = b.t - a.t;
  const double h2 = c.t - b.t;
  if (!(h1 > 0.0) || !(h2 > 0.0) ||
      std::abs(h1 - h2) > 1e-9 * std::max(h1, h2))
    throw Error(ErrorKind::BadWindow, "snapshots are not equally spaced in time");
}

double hm1_norm(const SpectralField& f) {
  return std::sqrt(std::max(0.0, inner_product(f, smoothing_inverse(f))));
}

double hm1_norm(const VectorField& f) {
  return std::sqrt(std::max(0.0, inner_product(f, smoothing_inverse(f))));
}

template <class Field>
ResidualNorms finish(const Field& residual, double scale) {
  ResidualNorms r;
  r.l2 = norm(residual, NormKind::L2);
  r.hm1 = hm1_norm(residual);
  r.scale = scale;
  if (scale > 0.0) {
    r.normalized = r.l2 / scale;
    r.normalized_hm1 = r.hm1 / scale;
  }
  return r;
}

template <class Field>
double sum_l2(std::initializer_list<const Field*> terms) {
  double s = 0.0;
  for (const Field* t : terms) s += norm(*t, NormKind::L2);
  return s;
}

}  // namespace

double w_factor(double eps, WConvention convention) {
  require_eps(eps);
  return convention == WConvention::regularized ? 1.0 / (1.0 - eps) : 1.0;
}

VectorField pseudo_baroclinic(const State& s, WConvention convention) {
  const double factor = w_factor(s.eps, convention);
  VectorField w = grad_inv_neg_laplacian(s.theta);
  w *= factor;
  w += s.v;
  return w;
}

VectorField commutator_F(const VectorField& u, const SpectralField& theta,
                         bool dz) {
  const SpectralField uxt = multiply(u.x, theta, dz);
  const SpectralField uyt = multiply(u.y, theta, dz);
  const SpectralField rxx = riesz_double(Axis::x, Axis::x, theta);
  const SpectralField rxy = riesz_double(Axis::x, Axis::y, theta);
  const SpectralField ryy = riesz_double(Axis::y, Axis::y, theta);

  SpectralField fx = riesz_double(Axis::x, Axis::x, uxt) +
                     riesz_double(Axis::x, Axis::y, uyt);
  fx -= multiply(u.x, rxx, dz);
  fx -= multiply(u.y, rxy, dz);

  SpectralField fy = riesz_double(Axis::y, Axis::x, uxt) +
                     riesz_double(Axis::y, Axis::y, uyt);
  fy -= multiply(u.x, rxy, dz);
  fy -= multiply(u.y, ryy, dz);
  return VectorField(std::move(fx), std::move(fy));
}

VectorField commutator_F_transport(const VectorField& u,
                                   const SpectralField& theta, bool dz) {
  // u.grad theta is mean-zero for solenoidal u; drop roundoff in the mean
  // before inverting.
  SpectralField transport = advect(u, theta, dz);
  transport.coefficients()[0] = 0.0;
  SpectralField centered = theta.to_spectral();
  centered.coefficients()[0] = 0.0;
  VectorField f = grad_inv_neg_laplacian(transport);
  f -= advect(u, grad_inv_neg_laplacian(centered), dz);
  return f;
}

SpectralField viscous_flux(const State& s) {
  require_eps(s.eps);
  return divergence(s.v) - (1.0 / (1.0 - s.eps)) * s.theta.to_spectral();
}

DerivedBundle derive(const State& s, bool dz, WConvention convention) {
  VectorField phi_pot = grad_inv_neg_laplacian(s.theta);
  VectorField w = phi_pot;
  w *= w_factor(s.eps, convention);
  w += s.v;
  return DerivedBundle{std::move(phi_pot), std::move(w),
                       commutator_F(s.u, s.theta, dz), viscous_flux(s), s.t,
                       s.eps};
}

ResidualNorms residual_w_equation(const State& prev, const State& mid,
                                  const State& next, bool dz,
                                  WConvention convention) {
  check_window(prev, mid, next);
  const double span = next.t - prev.t;
  const double factor = w_factor(mid.eps, convention);

  VectorField dtw = pseudo_baroclinic(next, convention) -
                    pseudo_baroclinic(prev, convention);
  dtw *= 1.0 / span;

  const VectorField w = pseudo_baroclinic(mid, convention);
  const VectorField adv_w = advect(mid.u, w, dz);
  const VectorField lap_w = laplacian(w);
  const VectorField stretch = advect(mid.v, mid.u, dz);
  VectorField pressure_like = grad_inv_neg_laplacian(divergence(mid.v));
  pressure_like *= factor;
  VectorField f = commutator_F(mid.u, mid.theta, dz);
  f *= factor;

  VectorField residual = dtw + adv_w;
  residual -= lap_w;
  residual += stretch;
  residual += pressure_like;
  residual += f;

  const double scale = sum_l2<VectorField>(
      {&dtw, &adv_w, &lap_w, &stretch, &pressure_like, &f});
  return finish(residual, scale);
}

ResidualNorms residual_phi_equation(const State& prev, const State& mid,
                                    const State& next, bool dz) {
  check_window(prev, mid, next);
  const double span = next.t - prev.t;

  VectorField dtphi =
      grad_inv_neg_laplacian(next.theta) - grad_inv_neg_laplacian(prev.theta);
  dtphi *= 1.0 / span;

  const VectorField phi = grad_inv_neg_laplacian(mid.theta);
  const VectorField adv = advect(mid.u, phi, dz);
  VectorField diff = laplacian(phi);
  diff *= mid.eps;
  const VectorField pressure_like = grad_inv_neg_laplacian(divergence(mid.v));
  const VectorField f = commutator_F(mid.u, mid.theta, dz);

  VectorField residual = dtphi + adv;
  residual -= diff;
  residual += pressure_like;
  residual += f;

  const double scale =
      sum_l2<VectorField>({&dtphi, &adv, &diff, &pressure_like, &f});
  return finish(residual, scale);
}

ResidualNorms residual_flux_equation(const State& prev, const State& mid,
                                     const State& next, bool dz) {
  check_window(prev, mid, next);
  const double span = next.t - prev.t;
  require_eps(mid.eps);

  SpectralField dtphi = viscous_flux(next) - viscous_flux(prev);
  dtphi *= 1.0 / span;

  const SpectralField phi = viscous_flux(mid);
  const SpectralField adv = advect(mid.u, phi, dz);
  const SpectralField lap = laplacian(phi);

  // 2 d_i u^j d_j v^i
  SpectralField coupling(mid.grid());
  for (Axis i : {Axis::x, Axis::y})
    for (Axis j : {Axis::x, Axis::y})
      coupling += multiply(derivative(mid.u[j], i), derivative(mid.v[i], j), dz);
  coupling *= 2.0;

  SpectralField source = divergence(mid.v);
  source *= 1.0 / (1.0 - mid.eps);

  SpectralField residual = dtphi + adv;
  residual -= lap;
  residual += coupling;
  residual -= source;

  const double scale =
      sum_l2<SpectralField>({&dtphi, &adv, &lap, &coupling, &source});
  return finish(residual, scale);
}

}  // namespace tcm
