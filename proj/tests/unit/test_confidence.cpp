#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bandit/confidence.hpp"
#include "bandit/reward_models.hpp"
#include "bandit/rng.hpp"

using namespace bandit;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("schedule values at the anchors") {
  CHECK(schedule_value(Schedule::chi_log(0.5), std::exp(2.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(schedule_value(Schedule::log_minus_sqrt_log(), 1.0)) <= 1e-15);
  CHECK(schedule_value(Schedule::log_plus_alpha_loglog(2.0), 1.0) == 0.0);
  CHECK(schedule_value(Schedule::chi_log(1.0), 1.0) == 0.0);
}

TEST_CASE("schedule domain and parameter validation") {
  CHECK_THROWS_AS(schedule_value(Schedule::chi_log(1.0), 0.999), std::domain_error);
  CHECK_THROWS_AS(Schedule::chi_log(0.0), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::chi_log(1.5), std::invalid_argument);
  CHECK_THROWS_AS(Schedule::log_plus_alpha_loglog(1.0), std::invalid_argument);
}

TEST_CASE("schedules are nonnegative and nondecreasing on a dense grid") {
  const Schedule schedules[] = {
      Schedule::chi_log(0.5), Schedule::chi_log(0.75), Schedule::chi_log(1.0),
      Schedule::log_minus_sqrt_log(), Schedule::log_plus_alpha_loglog(2.0)};
  for (const Schedule& s : schedules) {
    double prev = schedule_value(s, 1.0);
    CHECK(prev >= 0.0);
    // steps of 0.01 up to 100, then geometric up to 1e6
    for (double m = 1.01; m <= 100.0; m += 0.01) {
      const double v = schedule_value(s, m);
      CHECK(v >= prev);
      prev = v;
    }
    for (double m = 100.0; m <= 1e6; m *= 1.001) {
      const double v = schedule_value(s, m);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("normal known-variance bound closed form") {
  CHECK(ucb_normal_known(0.4, 10, 0.0) == 0.4);
  CHECK(ucb_normal_known(0.0, 2, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ucb_normal_known(0.5, 8, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ucb_normal_known(0.0, 0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ucb_normal_known(0.0, 1, -1.0), std::invalid_argument);
}

TEST_CASE("normal unknown-variance bound closed form") {
  CHECK(ucb_normal_unknown(0.0, 1.0, 5, 0.0) == 0.0);
  CHECK(ucb_normal_unknown(0.0, 1.0, 3, kLog2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ucb_normal_unknown(2.0, 0.5, 3, std::log(5.0)) ==
        doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(ucb_normal_unknown(0.0, 1.0, 1, 1.0), std::domain_error);
}

TEST_CASE("divisor-t unknown-variance baseline bound") {
  CHECK(ucb_bk_unknown(0.0, 1.0, 4, 0.0) == 0.0);
  CHECK(ucb_bk_unknown(0.0, 1.0, 2, kLog2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ucb_bk_unknown(1.0, 2.0, 1, kLog2) ==
        doctest::Approx(4.4641016151377544).epsilon(1e-12));
  // cross-check against bisection on t * M((u - xbar) / sigma_hat)
  const double sigma_hat = 2.0;
  const RateKernel kernel = [sigma_hat](double u, double x) {
    return m_function((u - x) / sigma_hat);
  };
  CHECK(ucb_bk_unknown(1.0, sigma_hat, 1, kLog2) ==
        doctest::Approx(generic_ucb(kernel, 1.0, 1, kLog2, 100.0)).epsilon(1e-8));
}

TEST_CASE("Bernoulli bound anchors") {
  CHECK(ucb_bernoulli(0.3, 7, 0.0) == 0.3);
  CHECK(ucb_bernoulli(0.0, 1, kLog2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(ucb_bernoulli(0.5, 1, kLog2) ==
        doctest::Approx(0.9330127018922193).epsilon(1e-9));
  CHECK(ucb_bernoulli(1.0, 3, 2.0) == 1.0);
  CHECK(ucb_bernoulli(0.0, 1, 1000.0) == 1.0);
  CHECK_THROWS_AS(ucb_bernoulli(-0.1, 1, 1.0), std::domain_error);
  CHECK_THROWS_AS(ucb_bernoulli(1.1, 1, 1.0), std::domain_error);
}

TEST_CASE("Bernoulli bound satisfies its residual contract") {
  RngStream rng(314);
  for (int i = 0; i < 1000; ++i) {
    const double xbar = rng.uniform01();
    const long long t = 1 + static_cast<long long>(rng.uniform01() * 10000);
    const double b = rng.uniform01() * 20.0;
    const double u = ucb_bernoulli(xbar, t, b);
    REQUIRE(u >= xbar);
    REQUIRE(u <= 1.0);
    if (u < 1.0 && b > 0.0) {
      const double resid = std::fabs(double(t) * rate_bernoulli(u, xbar) - b);
      CHECK(resid <= 1e-9 * std::max(1.0, b));
    }
  }
}

TEST_CASE("generic bisection reproduces the closed forms") {
  CHECK(generic_ucb(rate_normal_known, 0.0, 2, 1.0, 10.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(generic_ucb(rate_bernoulli, 0.5, 1, kLog2, 1.0) ==
        doctest::Approx(ucb_bernoulli(0.5, 1, kLog2)).epsilon(1e-8));
  CHECK(generic_ucb(rate_bernoulli, 0.9, 1, 10.0, 1.0) == 1.0);
  CHECK(generic_ucb(rate_normal_known, 0.25, 3, 0.0, 10.0) == 0.25);
  CHECK_THROWS_AS(generic_ucb(rate_normal_known, 1.0, 1, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("solvers agree with the bisection oracle on random queries") {
  RngStream rng(2718);
  for (int i = 0; i < 1000; ++i) {
    const double b = rng.uniform01() * 10.0;
    const long long t = 1 + static_cast<long long>(rng.uniform01() * 1000);

    const double x_normal = 4.0 * rng.normal();
    const double closed = ucb_normal_known(x_normal, t, b);
    const double oracle = generic_ucb(rate_normal_known, x_normal, t, b,
                                      normal_domain_upper(x_normal, t, b));
    CHECK(std::fabs(closed - oracle) <= 1e-8);

    const double x_bern = rng.uniform01();
    const double solved = ucb_bernoulli(x_bern, t, b);
    const double bisected = generic_ucb(rate_bernoulli, x_bern, t, b, 1.0);
    CHECK(std::fabs(solved - bisected) <= 1e-8);
  }
}

TEST_CASE("bounds are monotone in b and antitone in t") {
  RngStream rng(1618);
  for (int i = 0; i < 300; ++i) {
    const double b1 = rng.uniform01() * 5.0;
    const double b2 = b1 + rng.uniform01() * 5.0;
    const long long t1 = 2 + static_cast<long long>(rng.uniform01() * 500);
    const long long t2 = t1 + 1 + static_cast<long long>(rng.uniform01() * 500);
    const double sh = rng.uniform01() * 3.0;

    const double xn = rng.normal();
    CHECK(ucb_normal_known(xn, t1, b1) <= ucb_normal_known(xn, t1, b2) + 1e-12);
    CHECK(ucb_normal_known(xn, t1, b1) >= ucb_normal_known(xn, t2, b1) - 1e-12);
    CHECK(ucb_normal_unknown(xn, sh, t1, b1) <= ucb_normal_unknown(xn, sh, t1, b2) + 1e-12);
    CHECK(ucb_normal_unknown(xn, sh, t1, b1) >= ucb_normal_unknown(xn, sh, t2, b1) - 1e-12);
    CHECK(ucb_bk_unknown(xn, sh, t1, b1) <= ucb_bk_unknown(xn, sh, t1, b2) + 1e-12);
    CHECK(ucb_bk_unknown(xn, sh, t1, b1) >= ucb_bk_unknown(xn, sh, t2, b1) - 1e-12);

    const double xb = rng.uniform01();
    CHECK(ucb_bernoulli(xb, t1, b1) <= ucb_bernoulli(xb, t1, b2) + 1e-9);
    CHECK(ucb_bernoulli(xb, t1, b1) >= ucb_bernoulli(xb, t2, b1) - 1e-9);
  }
}

TEST_CASE("arm-size corrected coefficient never exceeds the classical one") {
  RngStream rng(55);
  for (int i = 0; i < 300; ++i) {
    const long long K = 1 + static_cast<long long>(rng.uniform01() * 100);
    const long long n = K + static_cast<long long>(rng.uniform01() * 100000);
    const double b_large = std::log(double(n) / double(K));
    const double b_classic = std::log(double(n));
    const long long t = 1 + static_cast<long long>(rng.uniform01() * 1000);
    const double xn = rng.normal();
    CHECK(ucb_normal_known(xn, t, std::max(0.0, b_large)) <=
          ucb_normal_known(xn, t, b_classic) + 1e-12);
    const double xb = rng.uniform01();
    CHECK(ucb_bernoulli(xb, t, std::max(0.0, b_large)) <=
          ucb_bernoulli(xb, t, b_classic) + 1e-9);
  }
}

TEST_CASE("bound queries dispatch to the family's solver") {
  CHECK(evaluate_bound(Family::NormalKnownVar, {0.0, 0.0, 2, 1.0}) ==
        ucb_normal_known(0.0, 2, 1.0));
  CHECK(evaluate_bound(Family::NormalUnknownVar, {0.0, 1.0, 3, kLog2}) ==
        ucb_normal_unknown(0.0, 1.0, 3, kLog2));
  CHECK(evaluate_bound(Family::NormalUnknownVar, {0.0, 1.0, 2, kLog2}, true) ==
        ucb_bk_unknown(0.0, 1.0, 2, kLog2));
  CHECK(evaluate_bound(Family::Bernoulli, {0.5, 0.0, 1, kLog2}) ==
        ucb_bernoulli(0.5, 1, kLog2));
  CHECK_THROWS_AS(evaluate_bound(Family::Bernoulli, {0.5, 0.0, 0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_bound(Family::Bernoulli, {0.5, 0.0, 1, -1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_bound(Family::Bernoulli, {0.5, 0.0, 1, 1.0}, true),
                  std::invalid_argument);
  CHECK_THROWS_AS(evaluate_bound(Family::Bernoulli, {1.5, 0.0, 1, 1.0}),
                  std::domain_error);
}
