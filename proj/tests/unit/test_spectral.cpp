#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "tcm/error.hpp"
#include "tcm/operators.hpp"

using namespace tcm;
using testing::kTwoPi;
using testing::mode_cos;
using testing::mode_sin;
using testing::rel;

namespace {

SpectralField centered(SpectralField f) {
  f = std::move(f).to_spectral();
  f.coefficients()[0] = 0.0;
  return f;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  const auto pa = a.to_physical();
  const auto pb = b.to_physical();
  double m = 0.0;
  for (std::size_t i = 0; i < pa.samples().size(); ++i)
    m = std::max(m, std::abs(pa.samples()[i] - pb.samples()[i]));
  return m;
}

}  // namespace

TEST_CASE("grid validation and zero wavenumber") {
  CHECK_THROWS_AS(Grid(7, 1.0), Error);
  CHECK_THROWS_AS(Grid(6, 1.0), Error);
  CHECK_THROWS_AS(Grid(16, 0.0), Error);
  const Grid g(16, 3.0);
  CHECK(g.wavenumber(0) == 0.0);
  CHECK(g.wavenumber(2) == doctest::Approx(kTwoPi * 2 / 3.0));
  CHECK(g.columns() == 9);
  CHECK(g.mode_y(15) == -1);
}

TEST_CASE("round trip and conjugate symmetry") {
  for (int n : {32, 64}) {
    const Grid g(n, 2.5);
    BandSampler s(11);
    const SpectralField f = s.scalar(g, 1, n / 3, 1.0);
    const SpectralField p = f.to_physical();
    const SpectralField back = p.to_spectral().to_physical();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < p.samples().size(); ++i) {
      num += std::pow(back.samples()[i] - p.samples()[i], 2);
      den += std::pow(p.samples()[i], 2);
    }
    CHECK(std::sqrt(num / den) < 1e-12);
    for (int kx = -3; kx <= 3; ++kx)
      for (int ky = -3; ky <= 3; ++ky)
        CHECK(std::abs(f.mode(kx, ky) - std::conj(f.mode(-kx, -ky))) < 1e-15);
  }
}

TEST_CASE("set_mode writes the conjugate partner") {
  const Grid g(16, kTwoPi);
  SpectralField f(g);
  f.set_mode(-2, 3, {0.5, -0.25});
  CHECK(f.mode(-2, 3) == Complex(0.5, -0.25));
  CHECK(f.mode(2, -3) == Complex(0.5, 0.25));
  f.set_mode(0, 2, {1.0, 1.0});
  CHECK(f.mode(0, -2) == Complex(1.0, -1.0));
  CHECK_THROWS_AS(f.set_mode(8, 0, {1.0, 0.0}), Error);
}

TEST_CASE("derivative examples") {
  const Grid g(32, 3.0);
  const double c = kTwoPi / 3.0;
  CHECK(rel(derivative(mode_sin(g, 1, 0), Axis::x), c * mode_cos(g, 1, 0)) < 1e-13);
  CHECK(norm(derivative(SpectralField::constant(g, 4.0), Axis::y), NormKind::L2) == 0.0);
  const SpectralField f = BandSampler(3).scalar(g, 1, 6, 1.0);
  CHECK(derivative(f, Axis::x).mean() == 0.0);
  const auto dxy = derivative(derivative(f, Axis::x), Axis::y);
  const auto dyx = derivative(derivative(f, Axis::y), Axis::x);
  CHECK(max_diff(dxy, dyx) < 1e-12 * max_abs(dxy));
}

TEST_CASE("derivative agrees with fourth-order finite differences") {
  // Same continuous field on two grids; the finite-difference error must fall
  // by about 2^4 per doubling.
  std::vector<double> errors;
  for (int n : {64, 128}) {
    const Grid g(n, kTwoPi);
    const SpectralField f = BandSampler(5).scalar(g, 1, 4, 1.0).to_physical();
    const SpectralField d = derivative(f, Axis::x).to_physical();
    const auto s = f.samples();
    const double h = g.spacing();
    double err = 0.0;
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        auto at = [&](int dx) { return s[static_cast<std::size_t>(iy) * n + (ix + dx + n) % n]; };
        const double fd = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
        err = std::max(err, std::abs(fd - d.samples()[static_cast<std::size_t>(iy) * n + ix]));
      }
    errors.push_back(err);
  }
  CHECK(errors[0] < 1e-2);
  CHECK(std::log2(errors[0] / errors[1]) > 3.8);
}

TEST_CASE("inverse Laplacian") {
  const Grid g(32, 3.0);
  const double c = 3.0 / kTwoPi;
  CHECK(rel(inv_neg_laplacian(mode_sin(g, 1, 0)), c * c * mode_sin(g, 1, 0)) < 1e-13);
  CHECK(norm(inv_neg_laplacian(SpectralField(g)), NormKind::L2) == 0.0);
  const SpectralField f = BandSampler(9).scalar(g, 1, 10, 1.0);
  const SpectralField u = inv_neg_laplacian(f);
  CHECK(rel(-laplacian(u), f) < 1e-12);
  CHECK(u.mean() == 0.0);
  CHECK_THROWS_AS(inv_neg_laplacian(f + SpectralField::constant(g, 0.1)), Error);
  try {
    inv_neg_laplacian(f + SpectralField::constant(g, 0.1));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonZeroMean);
  }
}

TEST_CASE("gradient of the inverse Laplacian") {
  const Grid g(32, 3.0);
  const VectorField phi = grad_inv_neg_laplacian(mode_sin(g, 1, 0));
  CHECK(rel(phi.x, (3.0 / kTwoPi) * mode_cos(g, 1, 0)) < 1e-13);
  CHECK(norm(phi.y, NormKind::L2) < 1e-14);
  CHECK(norm(grad_inv_neg_laplacian(SpectralField(g)), NormKind::L2) == 0.0);
  for (int n : {32, 64}) {
    const Grid gn(n, 2.0);
    const SpectralField theta = BandSampler(n).scalar(gn, 1, n / 2 - 1, 1.0);
    // div grad (-Lap)^{-1} = Lap (-Lap)^{-1} = -I on mean-zero fields.
    CHECK(rel(divergence(grad_inv_neg_laplacian(theta)), -theta) < 1e-12);
    for (int i = 0; i < 2; ++i) {
      const Axis a = i == 0 ? Axis::x : Axis::y;
      CHECK(rel(-laplacian(grad_inv_neg_laplacian(theta)[a]), derivative(theta, a)) < 1e-12);
    }
  }
}

TEST_CASE("double Riesz transforms") {
  const Grid g(32, kTwoPi);
  const SpectralField m = mode_sin(g, 1, 0);
  CHECK(rel(riesz_double(Axis::x, Axis::x, m), -m) < 1e-14);
  const SpectralField f = BandSampler(4).scalar(g, 1, 8, 1.0) + SpectralField::constant(g, 2.0);
  const auto xy = riesz_double(Axis::x, Axis::y, f);
  const auto yx = riesz_double(Axis::y, Axis::x, f);
  CHECK(std::equal(xy.coefficients().begin(), xy.coefficients().end(), yx.coefficients().begin()));
  CHECK(riesz_double(Axis::x, Axis::x, SpectralField::constant(g, 3.0)).mean() == 0.0);
  for (int n : {32, 64}) {
    const Grid gn(n, 1.5);
    const SpectralField h = centered(BandSampler(n + 1).scalar(gn, 1, n / 2 - 1, 1.0));
    const auto trace = riesz_double(Axis::x, Axis::x, h) + riesz_double(Axis::y, Axis::y, h);
    CHECK(rel(trace, -h) < 1e-12);
  }
}

TEST_CASE("Leray projection") {
  for (int n : {32, 64}) {
    const Grid g(n, 2.0);
    BandSampler s(21);
    const VectorField a = s.vector(g, 1, n / 2 - 1, 1.0) + VectorField(SpectralField::constant(g, 0.4), SpectralField::constant(g, -0.7));
    const VectorField b = s.vector(g, 1, n / 2 - 1, 1.0);
    const VectorField pa = leray_project(a);
    CHECK(norm(divergence(pa), NormKind::L2) < 1e-12 * norm(a, NormKind::H1));
    CHECK(rel(leray_project(pa), pa) < 1e-12);
    const double lhs = inner_product(pa, b);
    const double rhs = inner_product(a, leray_project(b));
    CHECK(std::abs(lhs - rhs) < 1e-12 * norm(a, NormKind::L2) * norm(b, NormKind::L2));
    CHECK(pa.x.mean() == doctest::Approx(a.x.mean()).epsilon(1e-14));
    CHECK(pa.y.mean() == doctest::Approx(a.y.mean()).epsilon(1e-14));

    const VectorField grad = gradient(s.scalar(g, 1, n / 2 - 1, 1.0));
    CHECK(norm(leray_project(grad), NormKind::L2) < 1e-12 * norm(grad, NormKind::L2));
    const VectorField sol = s.solenoidal(g, 1, n / 2 - 1, 1.0);
    CHECK(rel(leray_project(sol), sol) < 1e-12);
  }
}

TEST_CASE("dealiasing") {
  const Grid g(64, kTwoPi);
  const SpectralField low = mode_sin(g, 1, 0);
  CHECK(rel(dealias(low), low) < 1e-15);
  CHECK(norm(dealias(mode_sin(g, 30, 0)), NormKind::L2) < 1e-13);
  const SpectralField f = BandSampler(8).scalar(g, 1, 31, 1.0);
  const SpectralField d1 = dealias(f);
  const SpectralField d2 = dealias(d1);
  CHECK(std::equal(d1.coefficients().begin(), d1.coefficients().end(), d2.coefficients().begin()));
  CHECK(d1.mode(21, -21) == f.mode(21, -21));
  CHECK(d1.mode(22, 0) == Complex(0.0, 0.0));
}

TEST_CASE("norm examples") {
  const Grid g(32, 3.0);
  CHECK(norm(SpectralField::constant(g, -2.0), NormKind::L2) == doctest::Approx(6.0).epsilon(1e-14));
  const Grid g2(32, kTwoPi);
  const SpectralField s = mode_sin(g2, 1, 0);
  CHECK(norm(s, NormKind::L2) == doctest::Approx(std::sqrt(2.0) * std::numbers::pi).epsilon(1e-14));
  CHECK(norm(s, NormKind::Linf) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm(s, NormKind::H1) == doctest::Approx(std::sqrt(2.0) * std::numbers::pi * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(norm(s, NormKind::H2) == doctest::Approx(std::sqrt(2.0) * std::numbers::pi * std::sqrt(3.0)).epsilon(1e-14));
  VectorField v(s, s);
  CHECK(norm(v, NormKind::L2) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("L4 norm against an oversampled direct-sum quadrature") {
  const Grid g(32, 2.0);
  const int kmax = 4;
  const SpectralField f = BandSampler(17).scalar(g, 1, kmax, 1.0);
  // Evaluate the trigonometric polynomial by explicit sums on a 3x finer grid;
  // the trapezoidal rule is exact for f^4 there.
  const int m = 96;
  const double h = g.length() / m;
  const double c = kTwoPi / g.length();
  double sum = 0.0;
  for (int iy = 0; iy < m; ++iy)
    for (int ix = 0; ix < m; ++ix) {
      double v = 0.0;
      for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = -kmax; ky <= kmax; ++ky) {
          const Complex e = std::polar(1.0, c * (kx * ix * h + ky * iy * h));
          v += (f.mode(kx, ky) * e).real();
        }
      sum += std::pow(v, 4);
    }
  const double oracle = std::pow(sum * h * h, 0.25);
  CHECK(std::abs(norm(f, NormKind::L4) - oracle) < 1e-8 * oracle);
}

TEST_CASE("Parseval") {
  for (int n : {32, 64}) {
    const Grid g(n, 1.7);
    const SpectralField f = BandSampler(2).scalar(g, 1, n / 2 - 1, 1.0) + SpectralField::constant(g, 0.3);
    const SpectralField p = f.to_physical();
    double q = 0.0;
    for (double v : p.samples()) q += v * v;
    q *= g.spacing() * g.spacing();
    CHECK(std::abs(std::sqrt(q) - norm(f, NormKind::L2)) < 1e-12 * std::sqrt(q));
  }
}

TEST_CASE("smoothing inverse") {
  const Grid g(32, kTwoPi);
  CHECK(rel(smoothing_inverse(SpectralField::constant(g, 1.5)), SpectralField::constant(g, 1.5)) < 1e-15);
  CHECK(rel(smoothing_inverse(mode_sin(g, 1, 0)), 0.5 * mode_sin(g, 1, 0)) < 1e-14);
  const SpectralField f = BandSampler(6).scalar(g, 1, 15, 1.0) + SpectralField::constant(g, 0.2);
  const SpectralField s = smoothing_inverse(f);
  CHECK(rel(s - laplacian(s), f) < 1e-12);
  CHECK(norm(s, NormKind::L2) <= norm(f, NormKind::L2));
}

TEST_CASE("band sampler determinism and resolution independence") {
  const Grid g32(32, kTwoPi), g64(64, kTwoPi);
  const SpectralField a = BandSampler(99).scalar(g32, 1, 5, 1.0);
  const SpectralField b = BandSampler(99).scalar(g32, 1, 5, 1.0);
  CHECK(std::equal(a.coefficients().begin(), a.coefficients().end(), b.coefficients().begin()));
  const SpectralField c = BandSampler(99).scalar(g64, 1, 5, 1.0);
  for (int kx = -5; kx <= 5; ++kx)
    for (int ky = -5; ky <= 5; ++ky) CHECK(std::abs(a.mode(kx, ky) - c.mode(kx, ky)) < 1e-15);
  CHECK(norm(a, NormKind::L2) / kTwoPi == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(a.mean() == 0.0);
}
