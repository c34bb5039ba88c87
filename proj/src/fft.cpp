#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "tcm/error.hpp"

namespace tcm::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::size_t real_size = static_cast<std::size_t>(n) * n;
  const std::size_t complex_size = static_cast<std::size_t>(n) * (n / 2 + 1);
  double* r = fftw_alloc_real(real_size);
  fftw_complex* c = fftw_alloc_complex(complex_size);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  PlanPair p;
  p.forward = fftw_plan_dft_r2c_2d(n, n, r, c, flags);
  p.inverse = fftw_plan_dft_c2r_2d(n, n, c, r, flags);
  fftw_free(r);
  fftw_free(c);
  if (p.forward == nullptr || p.inverse == nullptr)
    throw Error(ErrorKind::Internal, "FFTW planning failed");
  return cache.emplace(n, p).first->second;
}

}  // namespace

void forward_r2c(int n, std::span<const double> in,
                 std::span<std::complex<double>> out) {
  const PlanPair& p = plans_for(n);
  // r2c does not modify its input.
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in.data()),
                       reinterpret_cast<fftw_complex*>(out.data()));
}

void inverse_c2r(int n, std::span<const std::complex<double>> in,
                 std::span<double> out) {
  const PlanPair& p = plans_for(n);
  // c2r overwrites its input.
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(p.inverse,
                       reinterpret_cast<fftw_complex*>(scratch.data()),
                       out.data());
}

}  // namespace tcm::detail
