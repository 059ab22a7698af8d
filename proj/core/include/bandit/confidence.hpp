#pragma once
/*
Confidence-coefficient schedules b_m and upper-confidence-bound solvers.

A bound solver answers: given a sample mean xbar from t rewards and a
confidence coefficient b, what is the largest mean u still compatible with
the data, i.e. the smallest u >= xbar with t * I_u(xbar) >= b for the
family's rate kernel I. Closed forms exist for the normal families; the
Bernoulli bound is found by the fixed-point iteration

    v_{i+1} = 1 - (d / v_i^x)^(1/(1-x)),   d = x^x (1-x)^(1-x) e^(-b/t),

started at v_0 = 1, which decreases monotonically to the larger root.
A generic bisection solver doubles as an independent oracle for all of them.

Tolerances are fixed constants rather than configuration: solver results
satisfy |t * I_U(xbar) - b| <= 1e-9 * max(1, b) whenever U is interior, and
the fixed-point step tolerance is 1e-12.
*/

#include <functional>

#include "bandit/reward_models.hpp"

namespace bandit {

enum class ScheduleKind {
  ChiLog,              // b_m = chi * log m,           0 < chi <= 1
  LogMinusSqrtLog,     // b_m = g - sqrt(g), g = log(e - 1 + m)
  LogPlusAlphaLogLog,  // b_m = log m + alpha * log(1 + log m), alpha > 1
};

struct Schedule {
  ScheduleKind kind = ScheduleKind::ChiLog;
  double chi = 1.0;
  double alpha = 2.0;

  static Schedule chi_log(double chi);
  static Schedule log_minus_sqrt_log();
  static Schedule log_plus_alpha_loglog(double alpha);
};

/// b_m for m >= 1; nonnegative and nondecreasing in m.
/// Throws std::domain_error for m < 1.
double schedule_value(const Schedule& s, double m);

/// A single bound query, as accepted by the CLI `bound` subcommand.
struct BoundQuery {
  double xbar = 0.0;
  double sigma_hat = 0.0;  // biased sample s.d.; unknown-variance queries only
  long long t = 1;         // per-arm sample count
  double b = 0.0;          // confidence coefficient
};

/// Dispatch a query to the family's solver (bk_variant selects the
/// divisor-t unknown-variance baseline). Validates the query's invariants.
double evaluate_bound(Family family, const BoundQuery& query, bool bk_variant = false);

/// xbar + sqrt(2 b / t); t >= 1, b >= 0.
double ucb_normal_known(double xbar, long long t, double b);

/// xbar + sigma_hat * sqrt(exp(2 b / (t - 1)) - 1); t >= 2.
/// The t - 1 is the effective sample size after estimating the variance.
double ucb_normal_unknown(double xbar, double sigma_hat, long long t, double b);

/// xbar + sigma_hat * sqrt(exp(2 b / t) - 1); t >= 1 (divisor t, baseline).
double ucb_bk_unknown(double xbar, double sigma_hat, long long t, double b);

/// Larger root in u of t * I_u(xbar) = b for the Bernoulli kernel, capped
/// at 1. Boundary closed forms: xbar = 1 -> 1, xbar = 0 -> min(1, 1-e^{-b/t}),
/// b = 0 -> xbar. Throws std::domain_error for xbar outside [0,1].
double ucb_bernoulli(double xbar, long long t, double b);

using RateKernel = std::function<double(double u, double x)>;

/// Monotone bisection for inf{u >= xbar : t * kernel(u, xbar) >= b} on
/// [xbar, domain_upper]. Returns domain_upper when the constraint is not
/// attainable below it, xbar when b = 0. kernel(u, xbar) must be
/// nondecreasing in u on the interval; +infinity counts as satisfied.
double generic_ucb(const RateKernel& kernel, double xbar, long long t,
                   double b, double domain_upper);

/// Default bisection cap for unbounded (normal-type) kernels:
/// xbar + 10 * sqrt(2 b / t) + 1, provably beyond the root.
double normal_domain_upper(double xbar, long long t, double b);

}  // namespace bandit
