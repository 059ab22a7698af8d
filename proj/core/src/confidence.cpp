#include "bandit/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bandit/reward_models.hpp"

namespace bandit {

namespace {

constexpr double kE = 2.71828182845904523536;
constexpr double kResidualTol = 1e-9;   // relative to max(1, b)
constexpr double kStepTol = 1e-12;      // fixed-point step tolerance
constexpr int kMaxFixedPointIters = 200;

double residual_tol(double b) { return kResidualTol * std::max(1.0, b); }

}  // namespace

Schedule Schedule::chi_log(double chi) {
  if (!(chi > 0.0 && chi <= 1.0))
    throw std::invalid_argument("Schedule: chi must be in (0,1]");
  Schedule s;
  s.kind = ScheduleKind::ChiLog;
  s.chi = chi;
  return s;
}

Schedule Schedule::log_minus_sqrt_log() {
  Schedule s;
  s.kind = ScheduleKind::LogMinusSqrtLog;
  return s;
}

Schedule Schedule::log_plus_alpha_loglog(double alpha) {
  if (!(alpha > 1.0))
    throw std::invalid_argument("Schedule: alpha must be > 1");
  Schedule s;
  s.kind = ScheduleKind::LogPlusAlphaLogLog;
  s.alpha = alpha;
  return s;
}

double schedule_value(const Schedule& s, double m) {
  if (!(m >= 1.0)) throw std::domain_error("schedule_value: m must be >= 1");
  switch (s.kind) {
    case ScheduleKind::ChiLog:
      return s.chi * std::log(m);
    case ScheduleKind::LogMinusSqrtLog: {
      const double g = std::log(kE - 1.0 + m);  // >= 1, so g - sqrt(g) >= 0
      return std::max(0.0, g - std::sqrt(g));
    }
    case ScheduleKind::LogPlusAlphaLogLog: {
      const double lm = std::log(m);
      return lm + s.alpha * std::log1p(lm);
    }
  }
  throw std::logic_error("schedule_value: bad kind");
}

double ucb_normal_known(double xbar, long long t, double b) {
  if (t < 1) throw std::invalid_argument("ucb_normal_known: t must be >= 1");
  if (!(b >= 0.0)) throw std::invalid_argument("ucb_normal_known: b must be >= 0");
  return xbar + std::sqrt(2.0 * b / static_cast<double>(t));
}

double ucb_normal_unknown(double xbar, double sigma_hat, long long t, double b) {
  if (t < 2) throw std::domain_error("ucb_normal_unknown: t must be >= 2");
  if (!(sigma_hat >= 0.0))
    throw std::invalid_argument("ucb_normal_unknown: sigma_hat must be >= 0");
  if (!(b >= 0.0)) throw std::invalid_argument("ucb_normal_unknown: b must be >= 0");
  return xbar + sigma_hat * std::sqrt(std::expm1(2.0 * b / static_cast<double>(t - 1)));
}

double ucb_bk_unknown(double xbar, double sigma_hat, long long t, double b) {
  if (t < 1) throw std::invalid_argument("ucb_bk_unknown: t must be >= 1");
  if (!(sigma_hat >= 0.0))
    throw std::invalid_argument("ucb_bk_unknown: sigma_hat must be >= 0");
  if (!(b >= 0.0)) throw std::invalid_argument("ucb_bk_unknown: b must be >= 0");
  return xbar + sigma_hat * std::sqrt(std::expm1(2.0 * b / static_cast<double>(t)));
}

double ucb_bernoulli(double xbar, long long t, double b) {
  if (!(xbar >= 0.0 && xbar <= 1.0))
    throw std::domain_error("ucb_bernoulli: xbar must be in [0,1]");
  if (t < 1) throw std::invalid_argument("ucb_bernoulli: t must be >= 1");
  if (!(b >= 0.0)) throw std::invalid_argument("ucb_bernoulli: b must be >= 0");
  if (b == 0.0) return xbar;
  if (xbar >= 1.0) return 1.0;
  const double y = b / static_cast<double>(t);
  if (xbar <= 0.0) return std::min(1.0, -std::expm1(-y));

  // log d = x log x + (1-x) log(1-x) - y
  const double log_d =
      xbar * std::log(xbar) + (1.0 - xbar) * std::log1p(-xbar) - y;
  double v = 1.0;
  for (int i = 0; i < kMaxFixedPointIters; ++i) {
    const double next = 1.0 - std::exp((log_d - xbar * std::log(v)) / (1.0 - xbar));
    const double step = std::fabs(next - v);
    v = next;
    if (step <= kStepTol) break;
  }
  if (v > xbar && v < 1.0) {
    const double resid = std::fabs(static_cast<double>(t) * rate_bernoulli(v, xbar) - b);
    if (resid <= residual_tol(b)) return v;
  }
  return generic_ucb(rate_bernoulli, xbar, t, b, 1.0);
}

double generic_ucb(const RateKernel& kernel, double xbar, long long t,
                   double b, double domain_upper) {
  if (t < 1) throw std::invalid_argument("generic_ucb: t must be >= 1");
  if (!(b >= 0.0)) throw std::invalid_argument("generic_ucb: b must be >= 0");
  if (!(domain_upper >= xbar))
    throw std::invalid_argument("generic_ucb: domain_upper must be >= xbar");
  if (b == 0.0) return xbar;

  const double td = static_cast<double>(t);
  const double tol = residual_tol(b);
  const double f_upper = td * kernel(domain_upper, xbar) - b;
  if (!(f_upper >= 0.0)) return domain_upper;  // constraint unattainable below cap

  double lo = xbar;
  double hi = domain_upper;
  // Invariant: t*kernel(lo) - b < 0 <= t*kernel(hi) - b.
  for (int i = 0; i < 2048; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;  // interval exhausted at double resolution
    const double fm = td * kernel(mid, xbar) - b;
    if (std::isfinite(fm) && std::fabs(fm) <= tol) return mid;
    if (fm >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;  // smallest representable u with the constraint satisfied
}

double normal_domain_upper(double xbar, long long t, double b) {
  return xbar + 10.0 * std::sqrt(2.0 * b / static_cast<double>(t)) + 1.0;
}

double evaluate_bound(Family family, const BoundQuery& query, bool bk_variant) {
  if (query.t < 1) throw std::invalid_argument("BoundQuery: t must be >= 1");
  if (!(query.b >= 0.0)) throw std::invalid_argument("BoundQuery: b must be >= 0");
  if (!(query.sigma_hat >= 0.0))
    throw std::invalid_argument("BoundQuery: sigma_hat must be >= 0");
  if (bk_variant && family != Family::NormalUnknownVar)
    throw std::invalid_argument("evaluate_bound: bk variant is unknown-variance only");
  switch (family) {
    case Family::NormalKnownVar:
      return ucb_normal_known(query.xbar, query.t, query.b);
    case Family::NormalUnknownVar:
      return bk_variant ? ucb_bk_unknown(query.xbar, query.sigma_hat, query.t, query.b)
                        : ucb_normal_unknown(query.xbar, query.sigma_hat, query.t, query.b);
    case Family::Bernoulli:
      return ucb_bernoulli(query.xbar, query.t, query.b);
  }
  throw std::logic_error("evaluate_bound: bad family");
}

}  // namespace bandit
