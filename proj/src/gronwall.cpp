#include "tcm/gronwall.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tcm/error.hpp"

namespace tcm::gronwall {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::not_applicable: return "not-applicable";
    case Outcome::violated: return "violated";
  }
  return "not-applicable";
}

void validate(const Series& g, bool require_k) {
  const std::size_t n = g.times.size();
  if (n == 0) throw SeriesError(0, "empty series");
  if (g.A.size() != n || g.B.size() != n || g.alpha.size() != n ||
      g.beta.size() != n)
    throw SeriesError(0, "series columns have different lengths");
  if (require_k && !(g.K > 0.0 && std::isfinite(g.K)))
    throw SeriesError(0, "K must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    auto bad = [i](const std::string& what) {
      throw SeriesError(i, what + " at index " + std::to_string(i));
    };
    if (!std::isfinite(g.times[i]) || !std::isfinite(g.A[i]) ||
        !std::isfinite(g.B[i]) || !std::isfinite(g.alpha[i]) ||
        !std::isfinite(g.beta[i]))
      bad("non-finite value");
    if (i > 0 && !(g.times[i] > g.times[i - 1])) bad("times not increasing");
    if (!(g.A[i] >= 1.0)) bad("A < 1");
    if (!(g.B[i] > 0.0)) bad("B <= 0");
    if (!(g.alpha[i] >= 0.0)) bad("alpha < 0");
    if (!(g.beta[i] >= 0.0)) bad("beta < 0");
  }
}

std::vector<double> cumulative_trapezoid(const std::vector<double>& t,
                                         const std::vector<double>& f) {
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 1; i < t.size(); ++i)
    out[i] = out[i - 1] + 0.5 * (t[i] - t[i - 1]) * (f[i] + f[i - 1]);
  return out;
}

std::vector<double> derivative(const std::vector<double>& t,
                               const std::vector<double>& f) {
  const std::size_t n = t.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / (t[1] - t[0]);
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = t[i] - t[i - 1];
    const double h1 = t[i + 1] - t[i];
    d[i] = (-h1 / (h0 * (h0 + h1))) * f[i - 1] +
           ((h1 - h0) / (h0 * h1)) * f[i] +
           (h0 / (h1 * (h0 + h1))) * f[i + 1];
  }
  {
    const double h0 = t[1] - t[0];
    const double h1 = t[2] - t[1];
    d[0] = (-(2.0 * h0 + h1) / (h0 * (h0 + h1))) * f[0] +
           ((h0 + h1) / (h0 * h1)) * f[1] - (h0 / (h1 * (h0 + h1))) * f[2];
  }
  {
    const double h0 = t[n - 2] - t[n - 3];
    const double h1 = t[n - 1] - t[n - 2];
    d[n - 1] = (h1 / (h0 * (h0 + h1))) * f[n - 3] -
               ((h0 + h1) / (h0 * h1)) * f[n - 2] +
               ((2.0 * h1 + h0) / (h1 * (h0 + h1))) * f[n - 1];
  }
  return d;
}

std::vector<double> q_of_t(const Series& g) {
  validate(g);
  const auto ia = cumulative_trapezoid(g.times, g.alpha);
  const auto ib = cumulative_trapezoid(g.times, g.beta);
  const double log_a0 = std::log(g.A[0]);
  std::vector<double> q(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.times[i] - g.times[0];
    q[i] = (log_a0 + g.K * ia[i] + ib[i] + 2.0 * g.K * g.K * t) *
           std::exp(g.K * t);
  }
  return q;
}

HypothesisReport verify_hypothesis(const Series& g, double tol) {
  validate(g);
  HypothesisReport r;
  r.a_prime = derivative(g.times, g.A);
  const std::size_t n = g.size();
  r.margin.resize(n);
  r.scale.resize(n);
  r.holds.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double log_b = std::log(g.B[i]);
    const double ap = r.a_prime[i];
    r.margin[i] = g.K * (g.alpha[i] + log_b) * g.A[i] + g.beta[i] - (ap + g.B[i]);
    r.scale[i] = g.K * (1.0 + g.alpha[i]) * (g.A[i] + std::abs(log_b) * g.A[i]) +
                 g.beta[i] + std::abs(ap) + g.B[i];
    r.holds[i] = r.margin[i] >= -tol * r.scale[i];
    if (!r.holds[i] && r.all_hold) {
      r.all_hold = false;
      r.first_failure = i;
    }
  }
  return r;
}

ConclusionReport conclusion_check(const Series& g, double tol) {
  ConclusionReport r;
  r.hypothesis = verify_hypothesis(g, tol);
  r.q = q_of_t(g);
  if (!r.hypothesis.all_hold) {
    r.outcome = Outcome::not_applicable;
    r.message = "hypothesis fails at index " +
                std::to_string(r.hypothesis.first_failure) +
                "; conclusion not asserted";
    return r;
  }
  const std::size_t n = g.size();
  const auto int_b = cumulative_trapezoid(g.times, g.B);
  r.lhs.resize(n);
  r.log_lhs.resize(n);
  r.log_rhs.resize(n);
  r.rhs.resize(n);
  r.satisfied.resize(n);
  double running_max = 0.0;
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    running_max = std::max(running_max, g.A[i]);
    r.lhs[i] = running_max + int_b[i];
    r.log_lhs[i] = std::log(r.lhs[i]);
    const double q = r.q[i];
    r.log_rhs[i] = std::log(2.0 * q + 1.0) + q;
    r.rhs[i] = r.log_rhs[i] > std::log(std::numeric_limits<double>::max())
                   ? std::numeric_limits<double>::infinity()
                   : (2.0 * q + 1.0) * std::exp(q);
    r.satisfied[i] = r.log_lhs[i] <= r.log_rhs[i] + std::log1p(tol);
    ok = ok && r.satisfied[i];
  }
  r.outcome = ok ? Outcome::holds : Outcome::violated;
  if (!ok) r.message = "conclusion fails on a hypothesis-passing series";
  return r;
}

FitResult fit_min_K(const Series& g, double k_min) {
  validate(g, false);
  const auto ap = derivative(g.times, g.A);
  FitResult fit;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double num = ap[i] + g.B[i] - g.beta[i];
    const double den = (g.alpha[i] + std::log(g.B[i])) * g.A[i];
    if (num <= 0.0) continue;
    if (!(den > 0.0))
      throw Error(ErrorKind::Infeasible,
                  "no K satisfies the hypothesis at index " + std::to_string(i));
    const double ratio = num / den;
    if (ratio > best) {
      best = ratio;
      fit.argmax = i;
    }
  }
  if (best < k_min) {
    fit.K = k_min;
    fit.clipped = true;
  } else {
    fit.K = best;
  }
  return fit;
}

}  // namespace tcm::gronwall
