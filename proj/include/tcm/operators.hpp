#pragma once

#include <span>

#include "tcm/spectral_field.hpp"

// Fourier-multiplier operators on the periodic torus.
//
// Odd-order multipliers (first derivatives, Leray projection, gradients of the
// inverse Laplacian) vanish on the Nyquist row/column; even-order multipliers
// use the full wavenumber.  Every result is returned in spectral form.

namespace tcm {

/// Relative tolerance on the mean for operators that invert -Laplacian.
inline constexpr double kMeanZeroTolerance = 1e-10;

SpectralField derivative(const SpectralField& f, Axis axis);
SpectralField laplacian(const SpectralField& f);
VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& a);
VectorField laplacian(const VectorField& a);

/// Solves -Lap g = f with zero mean.  Throws NonZeroMean if the mean of f
/// exceeds kMeanZeroTolerance relative to ||f||_2.
SpectralField inv_neg_laplacian(const SpectralField& f);

/// Phi = grad (-Lap)^{-1} theta, so that -Lap Phi_i = d_i theta.
VectorField grad_inv_neg_laplacian(const SpectralField& theta);

/// R_i R_j f = d_i d_j (-Lap)^{-1} f, multiplier -k_i k_j / |k|^2; the mean is
/// annihilated.
SpectralField riesz_double(Axis i, Axis j, const SpectralField& f);

/// L2-orthogonal projection onto divergence-free fields; keeps the mean.
VectorField leray_project(const VectorField& a);

/// Two-thirds rule: zero every mode with max(|kx|,|ky|) > n/3.
SpectralField dealias(const SpectralField& f);
VectorField dealias(const VectorField& a);

/// (I - Lap)^{-1}.
SpectralField smoothing_inverse(const SpectralField& f);
VectorField smoothing_inverse(const VectorField& a);

/// Pointwise product formed on physical samples.  With `dealias` set, the
/// factors and the result are truncated by the two-thirds rule, which makes
/// the retained modes of the product exact.
SpectralField multiply(const SpectralField& a, const SpectralField& b,
                       bool dealias);

/// (a . grad) f.
SpectralField advect(const VectorField& a, const SpectralField& f,
                     bool dealias);
VectorField advect(const VectorField& a, const VectorField& f, bool dealias);

/// L2 inner product over the torus.
double inner_product(const SpectralField& a, const SpectralField& b);
double inner_product(const VectorField& a, const VectorField& b);

enum class NormKind { L2, L4, Linf, H1, H2 };

/// Accumulates a norm over several components (a vector field, a tuple of
/// fields).  Pointwise norms (L4, Linf) combine components through the
/// Euclidean length at each sample; the Hilbert norms add component squares.
class NormAccumulator {
 public:
  explicit NormAccumulator(NormKind kind) : kind_(kind) {}
  NormAccumulator& add(const SpectralField& f);
  NormAccumulator& add(const VectorField& a);
  double value() const;

 private:
  NormKind kind_;
  double sum_ = 0.0;
  double area_ = 0.0;
  std::vector<double> pointwise_;
};

double norm(const SpectralField& f, NormKind kind);
double norm(const VectorField& a, NormKind kind);

/// Largest absolute physical sample.
double max_abs(const SpectralField& f);

}  // namespace tcm
