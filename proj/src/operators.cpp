#include "tcm/operators.hpp"

#include <algorithm>
#include <cmath>

#include "tcm/error.hpp"

namespace tcm {
namespace {

// Wavenumber used by odd-order multipliers: zero on the Nyquist index, whose
// sign is ambiguous.
double odd_wavenumber(const Grid& g, int mode) {
  return g.is_nyquist(mode) ? 0.0 : g.wavenumber(mode);
}

template <class Multiplier>
SpectralField apply(const SpectralField& f, Multiplier&& m) {
  SpectralField out = f.to_spectral();
  const Grid& g = out.grid();
  auto c = out.coefficients();
  const int cols = g.columns();
  for (int row = 0; row < g.n(); ++row) {
    const int ky = g.mode_y(row);
    for (int col = 0; col < cols; ++col) {
      auto& v = c[static_cast<std::size_t>(row) * cols + col];
      v *= m(g.mode_x(col), ky);
    }
  }
  return out;
}

double axis_odd(const Grid& g, Axis a, int kx, int ky) {
  return odd_wavenumber(g, a == Axis::x ? kx : ky);
}

bool above_cutoff(int n, int kx, int ky) {
  return 3 * std::max(std::abs(kx), std::abs(ky)) > n;
}

}  // namespace

SpectralField derivative(const SpectralField& f, Axis axis) {
  const Grid& g = f.grid();
  return apply(f, [&](int kx, int ky) {
    return Complex(0.0, axis_odd(g, axis, kx, ky));
  });
}

SpectralField laplacian(const SpectralField& f) {
  const Grid& g = f.grid();
  return apply(f, [&](int kx, int ky) {
    const double a = g.wavenumber(kx), b = g.wavenumber(ky);
    return Complex(-(a * a + b * b), 0.0);
  });
}

VectorField gradient(const SpectralField& f) {
  return VectorField(derivative(f, Axis::x), derivative(f, Axis::y));
}

SpectralField divergence(const VectorField& a) {
  return derivative(a.x, Axis::x) + derivative(a.y, Axis::y);
}

VectorField laplacian(const VectorField& a) {
  return VectorField(laplacian(a.x), laplacian(a.y));
}

static void require_mean_zero(const SpectralField& f) {
  const double mean_part = std::abs(f.mean()) * f.grid().length();
  const double total = norm(f, NormKind::L2);
  if (mean_part > kMeanZeroTolerance * total)
    throw Error(ErrorKind::NonZeroMean,
                "inverse Laplacian requires a mean-zero field (mean = " +
                    std::to_string(f.mean()) + ")");
}

SpectralField inv_neg_laplacian(const SpectralField& f) {
  require_mean_zero(f);
  const Grid& g = f.grid();
  return apply(f, [&](int kx, int ky) {
    if (kx == 0 && ky == 0) return Complex{};
    const double a = g.wavenumber(kx), b = g.wavenumber(ky);
    return Complex(1.0 / (a * a + b * b), 0.0);
  });
}

VectorField grad_inv_neg_laplacian(const SpectralField& theta) {
  require_mean_zero(theta);
  const Grid& g = theta.grid();
  auto component = [&](Axis axis) {
    return apply(theta, [&](int kx, int ky) {
      if (kx == 0 && ky == 0) return Complex{};
      const double a = g.wavenumber(kx), b = g.wavenumber(ky);
      return Complex(0.0, axis_odd(g, axis, kx, ky) / (a * a + b * b));
    });
  };
  return VectorField(component(Axis::x), component(Axis::y));
}

SpectralField riesz_double(Axis i, Axis j, const SpectralField& f) {
  const Grid& g = f.grid();
  return apply(f, [&](int kx, int ky) {
    if (kx == 0 && ky == 0) return Complex{};
    const double a = g.wavenumber(kx), b = g.wavenumber(ky);
    double num;
    if (i == j) {
      const double k = (i == Axis::x) ? a : b;
      num = k * k;
    } else {
      num = odd_wavenumber(g, kx) * odd_wavenumber(g, ky);
    }
    return Complex(-num / (a * a + b * b), 0.0);
  });
}

VectorField leray_project(const VectorField& a) {
  const Grid& g = a.grid();
  SpectralField ax = a.x.to_spectral();
  SpectralField ay = a.y.to_spectral();
  auto cx = ax.coefficients();
  auto cy = ay.coefficients();
  const int cols = g.columns();
  for (int row = 0; row < g.n(); ++row) {
    const double ky = odd_wavenumber(g, g.mode_y(row));
    for (int col = 0; col < cols; ++col) {
      const double kx = odd_wavenumber(g, g.mode_x(col));
      const double k2 = kx * kx + ky * ky;
      if (k2 == 0.0) continue;
      const std::size_t idx = static_cast<std::size_t>(row) * cols + col;
      const Complex kdota = (kx * cx[idx] + ky * cy[idx]) / k2;
      cx[idx] -= kx * kdota;
      cy[idx] -= ky * kdota;
    }
  }
  return VectorField(std::move(ax), std::move(ay));
}

SpectralField dealias(const SpectralField& f) {
  const int n = f.grid().n();
  return apply(f, [&](int kx, int ky) {
    return above_cutoff(n, kx, ky) ? Complex{} : Complex(1.0, 0.0);
  });
}

VectorField dealias(const VectorField& a) {
  return VectorField(dealias(a.x), dealias(a.y));
}

SpectralField smoothing_inverse(const SpectralField& f) {
  const Grid& g = f.grid();
  return apply(f, [&](int kx, int ky) {
    const double a = g.wavenumber(kx), b = g.wavenumber(ky);
    return Complex(1.0 / (1.0 + a * a + b * b), 0.0);
  });
}

VectorField smoothing_inverse(const VectorField& a) {
  return VectorField(smoothing_inverse(a.x), smoothing_inverse(a.y));
}

SpectralField multiply(const SpectralField& a, const SpectralField& b,
                       bool dealias_product) {
  if (!(a.grid() == b.grid()))
    throw Error(ErrorKind::BadParams, "grid mismatch in product");
  SpectralField pa =
      dealias_product ? dealias(a).to_physical() : a.to_physical();
  const SpectralField pb =
      dealias_product ? dealias(b).to_physical() : b.to_physical();
  auto sa = pa.samples();
  auto sb = pb.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] *= sb[i];
  SpectralField out = std::move(pa).to_spectral();
  return dealias_product ? dealias(out) : out;
}

SpectralField advect(const VectorField& a, const SpectralField& f,
                     bool dealias_product) {
  return multiply(a.x, derivative(f, Axis::x), dealias_product) +
         multiply(a.y, derivative(f, Axis::y), dealias_product);
}

VectorField advect(const VectorField& a, const VectorField& f,
                   bool dealias_product) {
  return VectorField(advect(a, f.x, dealias_product),
                     advect(a, f.y, dealias_product));
}

double inner_product(const SpectralField& a, const SpectralField& b) {
  const SpectralField sa = a.to_spectral();
  const SpectralField sb = b.to_spectral();
  const Grid& g = sa.grid();
  auto ca = sa.coefficients();
  auto cb = sb.coefficients();
  const int cols = g.columns();
  double s = 0.0;
  for (int row = 0; row < g.n(); ++row)
    for (int col = 0; col < cols; ++col) {
      const std::size_t idx = static_cast<std::size_t>(row) * cols + col;
      s += g.column_weight(col) * (ca[idx] * std::conj(cb[idx])).real();
    }
  return s * g.length() * g.length();
}

double inner_product(const VectorField& a, const VectorField& b) {
  return inner_product(a.x, b.x) + inner_product(a.y, b.y);
}

NormAccumulator& NormAccumulator::add(const SpectralField& f) {
  const Grid& g = f.grid();
  area_ = g.length() * g.length();
  if (kind_ == NormKind::L4 || kind_ == NormKind::Linf) {
    const SpectralField p = f.to_physical();
    auto s = p.samples();
    if (pointwise_.empty()) pointwise_.assign(s.size(), 0.0);
    if (pointwise_.size() != s.size())
      throw Error(ErrorKind::BadParams, "grid mismatch in norm");
    for (std::size_t i = 0; i < s.size(); ++i) pointwise_[i] += s[i] * s[i];
    return *this;
  }
  const SpectralField sf = f.to_spectral();
  auto c = sf.coefficients();
  const int cols = g.columns();
  double total = 0.0;
  for (int row = 0; row < g.n(); ++row) {
    const int ky = g.mode_y(row);
    const double kyo = odd_wavenumber(g, ky);
    const double kyf = g.wavenumber(ky);
    for (int col = 0; col < cols; ++col) {
      const int kx = g.mode_x(col);
      const double kxo = odd_wavenumber(g, kx);
      const double kxf = g.wavenumber(kx);
      double weight = 1.0;
      if (kind_ == NormKind::H1 || kind_ == NormKind::H2)
        weight += kxo * kxo + kyo * kyo;
      if (kind_ == NormKind::H2) {
        const double k2 = kxf * kxf + kyf * kyf;
        weight += k2 * k2;
      }
      total += g.column_weight(col) * weight *
               std::norm(c[static_cast<std::size_t>(row) * cols + col]);
    }
  }
  sum_ += total * area_;
  return *this;
}

NormAccumulator& NormAccumulator::add(const VectorField& a) {
  add(a.x);
  return add(a.y);
}

double NormAccumulator::value() const {
  switch (kind_) {
    case NormKind::L4: {
      if (pointwise_.empty()) return 0.0;
      double s = 0.0;
      for (double p : pointwise_) s += p * p;
      return std::pow(s * area_ / static_cast<double>(pointwise_.size()), 0.25);
    }
    case NormKind::Linf: {
      double m = 0.0;
      for (double p : pointwise_) m = std::max(m, p);
      return std::sqrt(m);
    }
    default:
      return std::sqrt(sum_);
  }
}

double norm(const SpectralField& f, NormKind kind) {
  return NormAccumulator(kind).add(f).value();
}

double norm(const VectorField& a, NormKind kind) {
  return NormAccumulator(kind).add(a).value();
}

double max_abs(const SpectralField& f) {
  return norm(f, NormKind::Linf);
}

}  // namespace tcm
