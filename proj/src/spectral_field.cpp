#include "tcm/spectral_field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"
#include "tcm/error.hpp"
#include "tcm/operators.hpp"

namespace tcm {

Grid::Grid(int n, double length) : n_(n), length_(length) {
  if (n < 8 || n % 2 != 0)
    throw Error(ErrorKind::BadParams,
                "grid size must be even and >= 8, got " + std::to_string(n));
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error(ErrorKind::BadParams, "domain length must be positive");
}

double Grid::wavenumber(int mode) const noexcept {
  return 2.0 * std::numbers::pi * mode / length_;
}

SpectralField::SpectralField(const Grid& grid) : SpectralField(grid, Space::spectral) {}

SpectralField::SpectralField(const Grid& grid, Space space)
    : grid_(grid), space_(space) {
  if (space == Space::spectral)
    coeffs_.assign(grid.spectral_size(), Complex{});
  else
    samples_.assign(grid.physical_size(), 0.0);
}

SpectralField SpectralField::from_physical(const Grid& grid,
                                           std::vector<double> samples) {
  if (samples.size() != grid.physical_size())
    throw Error(ErrorKind::BadParams, "sample count does not match grid");
  SpectralField f(grid, Space::physical);
  f.samples_ = std::move(samples);
  return f;
}

SpectralField SpectralField::from_spectral(const Grid& grid,
                                           std::vector<Complex> coefficients) {
  if (coefficients.size() != grid.spectral_size())
    throw Error(ErrorKind::BadParams, "coefficient count does not match grid");
  SpectralField f(grid, Space::spectral);
  f.coeffs_ = std::move(coefficients);
  return f;
}

SpectralField SpectralField::from_function(
    const Grid& grid, const std::function<double(double, double)>& fn) {
  std::vector<double> s(grid.physical_size());
  const int n = grid.n();
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix)
      s[static_cast<std::size_t>(iy) * n + ix] = fn(grid.x(ix), grid.y(iy));
  return from_physical(grid, std::move(s));
}

SpectralField SpectralField::constant(const Grid& grid, double value) {
  SpectralField f(grid);
  f.coeffs_[0] = value;
  return f;
}

SpectralField SpectralField::to_spectral() const& {
  SpectralField copy = *this;
  return std::move(copy).to_spectral();
}

SpectralField SpectralField::to_spectral() && {
  if (space_ == Space::spectral) return std::move(*this);
  SpectralField out(grid_, Space::spectral);
  detail::forward_r2c(grid_.n(), samples_, out.coeffs_);
  const double scale = 1.0 / static_cast<double>(grid_.physical_size());
  for (auto& c : out.coeffs_) c *= scale;
  return out;
}

SpectralField SpectralField::to_physical() const& {
  SpectralField copy = *this;
  return std::move(copy).to_physical();
}

SpectralField SpectralField::to_physical() && {
  if (space_ == Space::physical) return std::move(*this);
  SpectralField out(grid_, Space::physical);
  detail::inverse_c2r(grid_.n(), coeffs_, out.samples_);
  return out;
}

std::span<const double> SpectralField::samples() const {
  if (space_ != Space::physical)
    throw std::logic_error("field is not in physical space");
  return samples_;
}

std::span<double> SpectralField::samples() {
  if (space_ != Space::physical)
    throw std::logic_error("field is not in physical space");
  return samples_;
}

std::span<const Complex> SpectralField::coefficients() const {
  if (space_ != Space::spectral)
    throw std::logic_error("field is not in spectral space");
  return coeffs_;
}

std::span<Complex> SpectralField::coefficients() {
  if (space_ != Space::spectral)
    throw std::logic_error("field is not in spectral space");
  return coeffs_;
}

namespace {

int wrap(int k, int n) { return ((k % n) + n) % n; }

}  // namespace

Complex SpectralField::mode(int kx, int ky) const {
  if (space_ != Space::spectral) return to_spectral().mode(kx, ky);
  const int n = grid_.n();
  const int cols = grid_.columns();
  if (std::abs(kx) > n / 2 || std::abs(ky) > n / 2) return {};
  if (kx >= 0)
    return coeffs_[static_cast<std::size_t>(wrap(ky, n)) * cols + kx];
  return std::conj(coeffs_[static_cast<std::size_t>(wrap(-ky, n)) * cols - kx]);
}

void SpectralField::set_mode(int kx, int ky, Complex value) {
  const int n = grid_.n();
  const int cols = grid_.columns();
  if (std::abs(kx) >= n / 2 || std::abs(ky) >= n / 2)
    throw Error(ErrorKind::BadParams, "mode outside the Nyquist-free band");
  auto c = coefficients();
  if (kx < 0) {
    kx = -kx;
    ky = -ky;
    value = std::conj(value);
  }
  c[static_cast<std::size_t>(wrap(ky, n)) * cols + kx] = value;
  if (kx == 0)
    c[static_cast<std::size_t>(wrap(-ky, n)) * cols] = std::conj(value);
}

double SpectralField::mean() const {
  if (space_ == Space::spectral) return coeffs_[0].real();
  double s = 0.0;
  for (double v : samples_) s += v;
  return s / static_cast<double>(samples_.size());
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_))
    throw Error(ErrorKind::BadParams, "grid mismatch in field addition");
  if (space_ == Space::physical && other.space_ == Space::physical) {
    for (std::size_t i = 0; i < samples_.size(); ++i)
      samples_[i] += other.samples_[i];
    return *this;
  }
  if (space_ == Space::physical) *this = std::move(*this).to_spectral();
  if (other.space_ == Space::spectral) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      coeffs_[i] += other.coeffs_[i];
  } else {
    const SpectralField o = other.to_spectral();
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  }
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  return *this += -1.0 * other;
}

SpectralField& SpectralField::operator*=(double s) {
  for (auto& v : samples_) v *= s;
  for (auto& c : coeffs_) c *= s;
  return *this;
}

VectorField::VectorField(SpectralField x_, SpectralField y_)
    : x(std::move(x_)), y(std::move(y_)) {
  if (!(x.grid() == y.grid()))
    throw Error(ErrorKind::BadParams, "vector components on different grids");
}

VectorField& VectorField::operator+=(const VectorField& o) {
  x += o.x;
  y += o.y;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  x -= o.x;
  y -= o.y;
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  x *= s;
  y *= s;
  return *this;
}

BandSampler::BandSampler(std::uint64_t seed) : engine_(seed) {}

double BandSampler::uniform() {
  // 53 random mantissa bits; independent of the standard library's
  // distribution implementation.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

SpectralField BandSampler::scalar(const Grid& grid, int kmin, int kmax,
                                  double rms) {
  if (kmin < 1 || kmax < kmin || kmax >= grid.n() / 2)
    throw Error(ErrorKind::BadParams, "random band outside resolved modes");
  SpectralField f(grid);
  // Upper half-plane representatives of each conjugate pair, in an order that
  // does not depend on n.
  for (int kx = 0; kx <= kmax; ++kx) {
    for (int ky = -kmax; ky <= kmax; ++ky) {
      if (kx == 0 && ky <= 0) continue;
      const int shell = std::max(std::abs(kx), std::abs(ky));
      if (shell < kmin) continue;
      const double magnitude = (0.5 + 0.5 * uniform()) / shell;
      const double phase = 2.0 * std::numbers::pi * uniform();
      f.set_mode(kx, ky, std::polar(magnitude, phase));
    }
  }
  const double current = norm(f, NormKind::L2) / grid.length();
  if (current > 0.0) f *= rms / current;
  return f;
}

VectorField BandSampler::solenoidal(const Grid& grid, int kmin, int kmax,
                                    double rms) {
  const SpectralField psi = scalar(grid, kmin, kmax, 1.0);
  VectorField u(derivative(psi, Axis::y), -derivative(psi, Axis::x));
  const double current = norm(u, NormKind::L2) / grid.length();
  if (current > 0.0) u *= rms / current;
  return u;
}

VectorField BandSampler::vector(const Grid& grid, int kmin, int kmax,
                                double rms) {
  SpectralField a = scalar(grid, kmin, kmax, 1.0);
  SpectralField b = scalar(grid, kmin, kmax, 1.0);
  VectorField v(std::move(a), std::move(b));
  const double current = norm(v, NormKind::L2) / grid.length();
  if (current > 0.0) v *= rms / current;
  return v;
}

}  // namespace tcm
