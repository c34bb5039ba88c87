#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "tcm/derived.hpp"
#include "tcm/error.hpp"

using namespace tcm;
using testing::kTwoPi;
using testing::mode_cos;
using testing::mode_sin;
using testing::rel;

namespace {

State random_state(int n, double eps, std::uint64_t seed, int kmax = 3) {
  InitParams p;
  p.kmax = kmax;
  p.seed = seed;
  return make_initial(p, Grid(n, kTwoPi), eps, true);
}

// States at steps m-1, m, m+1 of a run with step dt.
std::array<State, 3> window(State s, double dt, int m) {
  std::array<State, 3> w{s, s, s};
  for (int k = 0; k <= m + 1; ++k) {
    if (k >= m - 1) w[k - (m - 1)] = s;
    if (k == m + 1) break;
    s = imex_step(s, dt, {});
    s.t = (k + 1) * dt;
  }
  return w;
}

}  // namespace

TEST_CASE("pseudo baroclinic velocity examples") {
  const Grid g(32, kTwoPi);
  State s(g);
  s.theta = mode_sin(g, 1, 0).to_spectral();
  VectorField w = pseudo_baroclinic(s);
  CHECK(rel(w.x, mode_cos(g, 1, 0)) < 1e-13);
  CHECK(norm(w.y, NormKind::L2) < 1e-14);

  s.eps = 0.2;
  CHECK(rel(pseudo_baroclinic(s).x, mode_cos(g, 1, 0) * (1.0 / 0.8)) < 1e-13);
  CHECK(rel(pseudo_baroclinic(s, WConvention::target).x, mode_cos(g, 1, 0)) < 1e-13);
  CHECK(w_factor(0.2, WConvention::regularized) == doctest::Approx(1.25));
  CHECK(w_factor(0.2, WConvention::target) == 1.0);

  s.eps = 1.0;
  CHECK_THROWS_AS(pseudo_baroclinic(s), Error);
  s.eps = 0.0;
  s.theta = s.theta + SpectralField::constant(g, 1.0);
  try {
    pseudo_baroclinic(s);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonZeroMean);
  }
}

TEST_CASE("pseudo baroclinic velocity is affine in (v, theta)") {
  const State a = random_state(32, 0.1, 1);
  const State b = random_state(32, 0.1, 2);
  State c(a.grid());
  c.eps = 0.1;
  c.v = a.v + 2.0 * b.v;
  c.theta = a.theta + 2.0 * b.theta;
  CHECK(rel(pseudo_baroclinic(c), pseudo_baroclinic(a) + 2.0 * pseudo_baroclinic(b)) < 1e-13);
}

TEST_CASE("commutator zero cases") {
  const Grid g(32, kTwoPi);
  const State s = random_state(32, 0.0, 4);
  CHECK(norm(commutator_F(VectorField(g), s.theta), NormKind::L2) == 0.0);
  CHECK(norm(commutator_F(s.u, SpectralField(g)), NormKind::L2) == 0.0);
  const VectorField cst(SpectralField::constant(g, 0.7), SpectralField::constant(g, -1.3));
  CHECK(norm(commutator_F(cst, s.theta), NormKind::L2) < 1e-13 * norm(s.theta, NormKind::L2));
}

TEST_CASE("commutator formulas agree for divergence-free u") {
  for (int n : {32, 64}) {
    const State s = random_state(n, 0.0, 9, n / 3 / 2);
    const VectorField a = commutator_F(s.u, s.theta);
    const VectorField b = commutator_F_transport(s.u, s.theta);
    CHECK(norm(a - b, NormKind::L2) < 1e-10 * norm(a, NormKind::L2));
    CHECK(norm(a, NormKind::L2) > 0.0);
  }
}

TEST_CASE("commutator is bilinear") {
  const State s = random_state(32, 0.0, 3);
  const State r = random_state(32, 0.0, 8);
  const VectorField base = commutator_F(s.u, s.theta);
  CHECK(rel(commutator_F(2.5 * s.u, s.theta), 2.5 * base) < 1e-13);
  CHECK(rel(commutator_F(s.u, -3.0 * s.theta), -3.0 * base) < 1e-13);
  CHECK(rel(commutator_F(s.u + r.u, s.theta), base + commutator_F(r.u, s.theta)) < 1e-13);
}

TEST_CASE("viscous flux examples") {
  const State a = random_state(32, 0.2, 6);
  State s(a.grid());
  s.eps = 0.2;
  s.theta = a.theta;
  s.v = (-1.0 / 0.8) * grad_inv_neg_laplacian(a.theta);
  CHECK(norm(viscous_flux(s), NormKind::L2) < 1e-13 * norm(a.theta, NormKind::L2));
  s.theta = SpectralField(a.grid());
  s.v = a.v;
  CHECK(rel(viscous_flux(s), divergence(a.v)) < 1e-14);
}

TEST_CASE("derived bundle") {
  const State s = random_state(32, 0.1, 12);
  const DerivedBundle d = derive(s);
  CHECK(rel(d.w, s.v + (1.0 / 0.9) * d.phi_potential) < 1e-13);
  CHECK(rel(divergence(d.phi_potential), -1.0 * s.theta) < 1e-12);
  CHECK(d.eps == 0.1);
}

TEST_CASE("residuals vanish on trivial trajectories") {
  const Grid g(32, kTwoPi);
  State z0(g), z1(g), z2(g);
  z1.t = 0.1;
  z2.t = 0.2;
  const auto r0 = residual_w_equation(z0, z1, z2);
  CHECK(r0.l2 == 0.0);
  CHECK(r0.normalized == 0.0);

  State s = random_state(32, 0.0, 2);
  s.v = VectorField(g);
  s.theta = SpectralField(g);
  const auto w = window(s, 0.01, 5);
  CHECK(residual_w_equation(w[0], w[1], w[2]).l2 <= 1e-12);
  CHECK(residual_phi_equation(w[0], w[1], w[2]).l2 <= 1e-12);
  CHECK(residual_flux_equation(w[0], w[1], w[2]).l2 <= 1e-12);
}

TEST_CASE("residual window validation") {
  const State s = random_state(32, 0.1, 2);
  State a = s, b = s, c = s;
  a.t = 0.0;
  b.t = 0.1;
  c.t = 0.3;
  CHECK_THROWS_AS(residual_w_equation(a, b, c), Error);
  c.t = 0.2;
  c.eps = 0.2;
  CHECK_THROWS_AS(residual_phi_equation(a, b, c), Error);
  const State other = random_state(64, 0.1, 2);
  CHECK_THROWS_AS(residual_flux_equation(a, b, other), Error);
}

TEST_CASE("residuals converge at second order") {
  for (double eps : {0.0, 0.1}) {
    std::array<std::vector<double>, 3> res;
    for (int lev = 0; lev < 3; ++lev) {
      const double dt = 0.01 / (1 << lev);
      const auto w = window(random_state(32, eps, 21), dt, 10 << lev);
      res[0].push_back(residual_w_equation(w[0], w[1], w[2]).normalized);
      res[1].push_back(residual_phi_equation(w[0], w[1], w[2]).normalized);
      res[2].push_back(residual_flux_equation(w[0], w[1], w[2]).normalized);
    }
    for (const auto& r : res) {
      CHECK(std::log2(r[0] / r[1]) >= 1.8);
      CHECK(std::log2(r[1] / r[2]) >= 1.8);
    }
  }
}
