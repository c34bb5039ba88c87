#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace tcm {

using Complex = std::complex<double>;

enum class Axis { x, y };

/// Uniform n x n periodic grid on the torus [0, L)^2.
///
/// Physical samples are stored row-major with the row index running along y
/// (index = iy * n + ix).  Fourier coefficients use the half-spectrum layout
/// of a real-to-complex transform: n rows (signed y mode) by n/2 + 1 columns
/// (nonnegative x mode).
class Grid {
 public:
  Grid(int n, double length);

  int n() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  double spacing() const noexcept { return length_ / n_; }
  int columns() const noexcept { return n_ / 2 + 1; }
  std::size_t physical_size() const noexcept {
    return static_cast<std::size_t>(n_) * n_;
  }
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(n_) * columns();
  }

  /// Signed integer mode for a spectral row (y direction).
  int mode_y(int row) const noexcept { return row <= n_ / 2 ? row : row - n_; }
  /// Integer mode for a spectral column (x direction), always >= 0.
  int mode_x(int col) const noexcept { return col; }
  /// Physical wavenumber 2*pi*k/L.
  double wavenumber(int mode) const noexcept;
  bool is_nyquist(int mode) const noexcept {
    return mode == n_ / 2 || mode == -n_ / 2;
  }

  /// Parseval weight of a stored column: interior columns stand for a
  /// conjugate pair.
  double column_weight(int col) const noexcept {
    return (col == 0 || col == n_ / 2) ? 1.0 : 2.0;
  }

  double x(int ix) const noexcept { return ix * spacing(); }
  double y(int iy) const noexcept { return iy * spacing(); }

  bool operator==(const Grid& other) const noexcept {
    return n_ == other.n_ && length_ == other.length_;
  }

 private:
  int n_;
  double length_;
};

enum class Space { physical, spectral };

/// A real scalar field on a Grid, held in either physical or Fourier
/// representation.  Coefficients are normalized so that the (0,0) entry is the
/// spatial mean.
class SpectralField {
 public:
  explicit SpectralField(const Grid& grid);  // zero field, spectral

  static SpectralField from_physical(const Grid& grid,
                                     std::vector<double> samples);
  static SpectralField from_spectral(const Grid& grid,
                                     std::vector<Complex> coefficients);
  static SpectralField from_function(
      const Grid& grid, const std::function<double(double, double)>& f);
  static SpectralField constant(const Grid& grid, double value);

  const Grid& grid() const noexcept { return grid_; }
  Space space() const noexcept { return space_; }

  SpectralField to_spectral() const&;
  SpectralField to_spectral() &&;
  SpectralField to_physical() const&;
  SpectralField to_physical() &&;

  /// Raw storage of the current representation.
  std::span<const double> samples() const;
  std::span<double> samples();
  std::span<const Complex> coefficients() const;
  std::span<Complex> coefficients();

  /// Coefficient of an arbitrary signed mode (uses conjugate symmetry).
  Complex mode(int kx, int ky) const;
  /// Sets a signed mode and its conjugate partner.  Field must be spectral.
  void set_mode(int kx, int ky, Complex value);

  double mean() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    return a += b;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    return a -= b;
  }
  friend SpectralField operator*(double s, SpectralField a) { return a *= s; }
  friend SpectralField operator*(SpectralField a, double s) { return a *= s; }
  SpectralField operator-() const { return -1.0 * *this; }

 private:
  SpectralField(const Grid& grid, Space space);

  Grid grid_;
  Space space_;
  std::vector<double> samples_;
  std::vector<Complex> coeffs_;
};

/// Two-component field; both components live on one grid.
struct VectorField {
  SpectralField x;
  SpectralField y;

  explicit VectorField(const Grid& grid) : x(grid), y(grid) {}
  VectorField(SpectralField x_, SpectralField y_);

  const Grid& grid() const noexcept { return x.grid(); }
  const SpectralField& operator[](Axis a) const { return a == Axis::x ? x : y; }
  SpectralField& operator[](Axis a) { return a == Axis::x ? x : y; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
  friend VectorField operator+(VectorField a, const VectorField& b) {
    return a += b;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    return a -= b;
  }
  friend VectorField operator*(double s, VectorField a) { return a *= s; }
};

/// Deterministic generator for random band-limited fields.  The sequence of
/// draws depends only on the band, not on the grid size, so the same seed
/// produces the same continuous field on every resolution that resolves it.
class BandSampler {
 public:
  explicit BandSampler(std::uint64_t seed);

  /// Uniform in [0, 1).
  double uniform();

  /// Real field whose nonzero modes satisfy kmin <= max(|kx|,|ky|) <= kmax,
  /// scaled to the requested root-mean-square value (mean zero).
  SpectralField scalar(const Grid& grid, int kmin, int kmax, double rms);

  /// Divergence-free vector field in the band, scaled to rms.
  VectorField solenoidal(const Grid& grid, int kmin, int kmax, double rms);

  /// Unconstrained vector field in the band, scaled to rms.
  VectorField vector(const Grid& grid, int kmin, int kmax, double rms);

 private:
  std::mt19937_64 engine_;
};

}  // namespace tcm
