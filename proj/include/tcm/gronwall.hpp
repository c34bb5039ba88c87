#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tcm::gronwall {

/// Sampled inputs of the logarithmic Gronwall inequality
///   A' + B <= K (alpha + log B) A + beta,
/// whose conclusion is
///   sup_{s<=t} A(s) + int_0^t B <= (2Q(t) + 1) e^{Q(t)},
///   Q(t) = (log A(0) + K ||alpha||_1 + ||beta||_1 + 2 K^2 t) e^{K t}.
struct Series {
  std::vector<double> times;
  std::vector<double> A;
  std::vector<double> B;
  std::vector<double> alpha;
  std::vector<double> beta;
  double K = 1.0;

  std::size_t size() const noexcept { return times.size(); }
};

inline constexpr double kDefaultTolerance = 1e-6;

/// Throws SeriesError (BadSeries) naming the first offending index: times
/// strictly increasing, A >= 1, B > 0, alpha >= 0, beta >= 0, all finite,
/// equal lengths, and K > 0 when `require_k`.
void validate(const Series& g, bool require_k = true);

/// Running trapezoidal integral, starting at 0.
std::vector<double> cumulative_trapezoid(const std::vector<double>& t,
                                         const std::vector<double>& f);

/// Second-order derivative estimate on a possibly nonuniform grid: centered
/// three-point formula inside, one-sided three-point formula at the ends.
std::vector<double> derivative(const std::vector<double>& t,
                               const std::vector<double>& f);

std::vector<double> q_of_t(const Series& g);

struct HypothesisReport {
  std::vector<double> a_prime;
  std::vector<double> margin;  // K(alpha + log B)A + beta - (A' + B)
  std::vector<double> scale;   // K(1+alpha)(A + |log B| A) + beta + |A'| + B
  std::vector<bool> holds;     // margin >= -tol * scale
  bool all_hold = true;
  std::size_t first_failure = 0;
};

HypothesisReport verify_hypothesis(const Series& g,
                                   double tol = kDefaultTolerance);

enum class Outcome { holds, not_applicable, violated };
const char* to_string(Outcome o);

struct ConclusionReport {
  Outcome outcome = Outcome::not_applicable;
  HypothesisReport hypothesis;
  std::vector<double> q;
  std::vector<double> lhs;      // sup A + int B
  std::vector<double> log_lhs;
  std::vector<double> log_rhs;  // log(2Q+1) + Q
  std::vector<double> rhs;      // (2Q+1) e^Q, +inf on overflow
  std::vector<bool> satisfied;
  std::string message;
};

/// Evaluates the conclusion at every sample.  When the hypothesis fails
/// beyond tolerance the outcome is not_applicable and no per-sample verdict
/// is produced.  `violated` is reserved for a hypothesis-passing series whose
/// conclusion fails, which would be a defect.
ConclusionReport conclusion_check(const Series& g,
                                  double tol = kDefaultTolerance);

struct FitResult {
  double K = 0.0;
  std::size_t argmax = 0;
  bool clipped = false;  // K came from k_min
};

/// Smallest K such that the hypothesis holds at every sample:
/// K = max (A' + B - beta) / ((alpha + log B) A), clipped below at k_min.
/// Throws Infeasible when a sample has a positive numerator and a
/// nonpositive denominator.
FitResult fit_min_K(const Series& g, double k_min = 1e-6);

}  // namespace tcm::gronwall
