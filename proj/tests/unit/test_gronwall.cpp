#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "tcm/error.hpp"
#include "tcm/gronwall.hpp"

using namespace tcm;
using namespace tcm::gronwall;

namespace {

constexpr double e = std::numbers::e;

Series constant_series(std::size_t n, double T, double A, double B, double alpha, double beta,
                       double K) {
  Series g;
  g.K = K;
  for (std::size_t i = 0; i < n; ++i) {
    g.times.push_back(T * static_cast<double>(i) / static_cast<double>(n - 1));
    g.A.push_back(A);
    g.B.push_back(B);
    g.alpha.push_back(alpha);
    g.beta.push_back(beta);
  }
  return g;
}

// Larger root of B = a log B (a >= e), by bisection on [a, a^2].
double larger_root(double a) {
  double lo = e, hi = std::max(a * a, 2.0 * e);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mid - a * std::log(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// A = e^{t+2}, alpha = 1, beta = 0, K = 1: equality A' + B = (1 + log B) A
// reduces to B = A log B.
Series equality_family(std::size_t n) {
  Series g;
  g.K = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    g.times.push_back(t);
    g.A.push_back(std::exp(t + 2.0));
    g.B.push_back(larger_root(g.A.back()));
    g.alpha.push_back(1.0);
    g.beta.push_back(0.0);
  }
  return g;
}

}  // namespace

TEST_CASE("Q examples") {
  const Series g = constant_series(11, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0);
  const auto q = q_of_t(g);
  CHECK(q.back() == doctest::Approx(2.0 * e).epsilon(1e-14));
  CHECK(q.back() == doctest::Approx(5.43656).epsilon(1e-5));

  Series h = constant_series(5, 2.0, 3.5, 2.0, 0.4, 0.2, 7.0);
  CHECK(q_of_t(h).front() == doctest::Approx(std::log(3.5)).epsilon(1e-15));

  const Series k = constant_series(101, 0.5, e, e, 1.0, 0.0, 2.0);
  CHECK(q_of_t(k).back() == doctest::Approx(6.0 * e).epsilon(1e-13));
}

TEST_CASE("Q with a varying alpha matches Simpson quadrature") {
  // alpha = 1 + sin(3t), beta = t^2 on [0, 1]; Simpson on a fine grid is the
  // oracle and trapezoid error must shrink by 4 per refinement.
  const double K = 1.5, a0 = 2.0;
  auto simpson = [](auto f, double T) {
    const int m = 20000;
    const double h = T / m;
    double s = f(0.0) + f(T);
    for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
  };
  const double ia = simpson([](double t) { return 1.0 + std::sin(3.0 * t); }, 1.0);
  const double ib = simpson([](double t) { return t * t; }, 1.0);
  const double exact = (std::log(a0) + K * ia + ib + 2.0 * K * K) * std::exp(K);
  std::vector<double> err;
  for (std::size_t n : {51u, 101u, 201u}) {
    Series g = constant_series(n, 1.0, a0, 2.0, 0.0, 0.0, K);
    g.A.assign(n, 1.0);
    g.A[0] = a0;
    for (std::size_t i = 0; i < n; ++i) {
      g.alpha[i] = 1.0 + std::sin(3.0 * g.times[i]);
      g.beta[i] = g.times[i] * g.times[i];
    }
    err.push_back(std::abs(q_of_t(g).back() - exact));
  }
  CHECK(err[0] < 1e-3 * exact);
  CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.05));
  CHECK(err[1] / err[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("Q is nondecreasing") {
  Series g = constant_series(41, 2.0, 1.7, 3.0, 0.0, 0.0, 0.8);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.alpha[i] = std::abs(std::sin(5.0 * g.times[i]));
    g.beta[i] = std::abs(std::cos(2.0 * g.times[i]));
  }
  const auto q = q_of_t(g);
  for (std::size_t i = 1; i < q.size(); ++i) CHECK(q[i] >= q[i - 1]);
}

TEST_CASE("equality margins of constant solutions") {
  const auto r1 = verify_hypothesis(constant_series(21, 1.0, 1.0, 1.0, 0.0, 1.0, 3.0));
  const auto r2 = verify_hypothesis(constant_series(21, 1.0, 1.0, e, 0.0, 0.0, e));
  for (std::size_t i = 0; i < 21; ++i) {
    CHECK(std::abs(r1.margin[i]) <= 1e-12);
    CHECK(std::abs(r2.margin[i]) <= 1e-12);
  }
  CHECK(r1.all_hold);
  CHECK(r2.all_hold);
}

TEST_CASE("derivative estimate is exact on quadratics") {
  const std::vector<double> t{0.0, 0.1, 0.35, 0.4, 0.9, 1.0};
  std::vector<double> f, want;
  for (double x : t) {
    f.push_back(3.0 * x * x - x + 2.0);
    want.push_back(6.0 * x - 1.0);
  }
  const auto d = derivative(t, f);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(d[i] == doctest::Approx(want[i]).epsilon(1e-12));
  const auto c = cumulative_trapezoid({0.0, 1.0, 3.0}, {1.0, 1.0, 1.0});
  CHECK(c[2] == 3.0);
}

TEST_CASE("conclusion examples") {
  const auto r = conclusion_check(constant_series(101, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0));
  CHECK(r.outcome == Outcome::holds);
  CHECK(r.lhs.back() == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(r.q.back() == doctest::Approx(3.0 * e).epsilon(1e-13));
  CHECK(r.rhs.back() == doctest::Approx((6.0 * e + 1.0) * std::exp(3.0 * e)).epsilon(1e-12));

  const Series g = constant_series(3, 1.0, 4.0, 1.0, 0.0, 5.0, 1.0);
  const auto r0 = conclusion_check(g);
  CHECK(r0.lhs.front() == 4.0);
  CHECK(r0.rhs.front() == doctest::Approx((2.0 * std::log(4.0) + 1.0) * 4.0));
  CHECK(r0.satisfied.front());
  CHECK(std::string(to_string(Outcome::not_applicable)) == "not-applicable");
}

TEST_CASE("equality ODE family") {
  const Series g = equality_family(1001);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(g.B[i] - g.A[i] * std::log(g.B[i])) < 1e-9 * g.B[i]);
  const auto h = verify_hypothesis(g);
  CHECK(h.all_hold);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) worst = std::max(worst, std::abs(h.margin[i]) / h.scale[i]);
  CHECK(worst < 1e-6);
  const auto c = conclusion_check(g);
  CHECK(c.outcome == Outcome::holds);
}

TEST_CASE("failed hypothesis gives not-applicable") {
  Series g = constant_series(11, 1.0, 1.0, 5.0, 0.0, 0.0, 0.01);
  const auto c = conclusion_check(g);
  CHECK(c.outcome == Outcome::not_applicable);
  CHECK(c.satisfied.empty());
  CHECK(c.hypothesis.first_failure == 0);
}

TEST_CASE("fit_min_K examples") {
  const auto f1 = fit_min_K(constant_series(11, 1.0, 1.0, 1.0, 0.0, 1.0, 1.0), 1e-3);
  CHECK(f1.K == 1e-3);
  CHECK(f1.clipped);
  const auto f2 = fit_min_K(constant_series(11, 1.0, 1.0, e, 0.0, 0.0, 1.0));
  CHECK(f2.K == doctest::Approx(e).epsilon(1e-14));
  CHECK_FALSE(f2.clipped);
  Series g = constant_series(11, 1.0, 1.0, 0.5, 0.0, 0.0, 1.0);
  CHECK_THROWS_AS(fit_min_K(g), Error);
  try {
    fit_min_K(g);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Infeasible);
  }

  Series fam = equality_family(401);
  const auto f3 = fit_min_K(fam);
  fam.K = f3.K;
  CHECK(verify_hypothesis(fam).all_hold);
  CHECK(conclusion_check(fam).outcome == Outcome::holds);
}

TEST_CASE("series validation names the first bad index") {
  Series g = constant_series(6, 1.0, 1.0, 2.0, 0.0, 0.0, 1.0);
  g.A[3] = 0.5;
  g.beta[4] = -1.0;
  try {
    validate(g);
    CHECK(false);
  } catch (const SeriesError& err) {
    CHECK(err.index() == 3);
    CHECK(err.kind() == ErrorKind::BadSeries);
  }
  g.A[3] = 1.0;
  g.times[2] = g.times[1];
  try {
    q_of_t(g);
    CHECK(false);
  } catch (const SeriesError& err) {
    CHECK(err.index() == 2);
  }
  Series k = constant_series(4, 1.0, 1.0, 2.0, 0.0, 0.0, 0.0);
  CHECK_THROWS_AS(validate(k), SeriesError);
  CHECK_NOTHROW(validate(k, false));
}

TEST_CASE("margins are monotone in beta and K when B >= 1") {
  Series g = constant_series(31, 1.0, 1.0, 2.0, 0.0, 0.0, 0.5);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.A[i] = 1.0 + g.times[i] * g.times[i];
    g.B[i] = 1.0 + std::exp(g.times[i]);
    g.alpha[i] = 0.3 * g.times[i];
  }
  const auto base = verify_hypothesis(g).margin;
  Series more_beta = g;
  for (auto& b : more_beta.beta) b += 0.7;
  Series more_k = g;
  more_k.K = 2.0;
  const auto mb = verify_hypothesis(more_beta).margin;
  const auto mk = verify_hypothesis(more_k).margin;
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(mb[i] >= base[i]);
    CHECK(mk[i] >= base[i]);
  }
}
