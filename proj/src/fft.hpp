#pragma once

#include <complex>
#include <span>

namespace tcm::detail {

// Unnormalized 2-D real transforms on an n x n row-major array backed by
// FFTW.  Plans are created once per size under a lock; execution is
// reentrant.
void forward_r2c(int n, std::span<const double> in,
                 std::span<std::complex<double>> out);
void inverse_c2r(int n, std::span<const std::complex<double>> in,
                 std::span<double> out);

}  // namespace tcm::detail
