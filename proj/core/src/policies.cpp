#include "bandit/policies.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bandit {

namespace {

int required_init(Family family) {
  return family == Family::NormalUnknownVar ? 2 : 1;
}

/// Confidence coefficient for a UCB policy at n total rewards.
double coefficient(const PolicySpec& spec, long long n, int num_arms) {
  const double nd = static_cast<double>(n);
  switch (spec.kind) {
    case PolicyKind::UcbLarge: {
      const double kd = static_cast<double>(num_arms);
      double m = spec.perturb_q == 0.0
                     ? nd / kd
                     : nd / std::pow(kd, 1.0 - spec.perturb_q);
      if (m < 1.0) m = 1.0;
      return schedule_value(spec.schedule, m);
    }
    case PolicyKind::UcbAgrawal:
      return schedule_value(spec.schedule, nd);
    case PolicyKind::UcbBK:
      return std::log(nd);
    case PolicyKind::Thompson:
      break;
  }
  throw std::logic_error("coefficient: not a UCB policy");
}

double arm_index(const PolicySpec& spec, const ArmStats& a, double b) {
  switch (spec.family) {
    case Family::NormalKnownVar:
      return ucb_normal_known(a.mean(), a.count, b);
    case Family::NormalUnknownVar:
      return spec.kind == PolicyKind::UcbBK
                 ? ucb_bk_unknown(a.mean(), a.sigma_hat(), a.count, b)
                 : ucb_normal_unknown(a.mean(), a.sigma_hat(), a.count, b);
    case Family::Bernoulli:
      return ucb_bernoulli(a.mean(), a.count, b);
  }
  throw std::logic_error("arm_index: bad family");
}

}  // namespace

PolicySpec PolicySpec::ucb_large(Family family, Schedule schedule, double q) {
  if (!(q >= 0.0 && q < 1.0))
    throw std::invalid_argument("PolicySpec: q must be in [0,1)");
  PolicySpec s;
  s.kind = PolicyKind::UcbLarge;
  s.family = family;
  s.schedule = schedule;
  s.perturb_q = q;
  s.init_per_arm = required_init(family);
  return s;
}

PolicySpec PolicySpec::ucb_agrawal(Family family, Schedule schedule) {
  PolicySpec s;
  s.kind = PolicyKind::UcbAgrawal;
  s.family = family;
  s.schedule = schedule;
  s.init_per_arm = required_init(family);
  return s;
}

PolicySpec PolicySpec::ucb_bk() {
  PolicySpec s;
  s.kind = PolicyKind::UcbBK;
  s.family = Family::NormalUnknownVar;
  s.init_per_arm = 2;
  return s;
}

PolicySpec PolicySpec::thompson(Family family) {
  PolicySpec s;
  s.kind = PolicyKind::Thompson;
  s.family = family;
  s.init_per_arm = required_init(family);
  return s;
}

std::string PolicySpec::label() const {
  switch (kind) {
    case PolicyKind::UcbLarge: return "ucb-large";
    case PolicyKind::UcbAgrawal: return "ucb-agrawal";
    case PolicyKind::UcbBK: return "ucb-bk";
    case PolicyKind::Thompson: return "thompson";
  }
  return "?";
}

namespace {

std::string short_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

std::string PolicySpec::params_string() const {
  if (kind == PolicyKind::Thompson || kind == PolicyKind::UcbBK) return "";
  std::string out;
  switch (schedule.kind) {
    case ScheduleKind::ChiLog:
      out = "chi=" + short_real(schedule.chi);
      break;
    case ScheduleKind::LogMinusSqrtLog:
      out = "schedule=log-sqrt";
      break;
    case ScheduleKind::LogPlusAlphaLogLog:
      out = "schedule=log-alpha:alpha=" + short_real(schedule.alpha);
      break;
  }
  if (kind == PolicyKind::UcbLarge && perturb_q != 0.0)
    out += ":q=" + short_real(perturb_q);
  return out;
}

PolicyState init_state(const PolicySpec& spec, int num_arms) {
  if (num_arms < 1) throw std::invalid_argument("init_state: need at least one arm");
  PolicyState state;
  state.arms.assign(static_cast<std::size_t>(num_arms), ArmStats{});
  state.forced.reserve(static_cast<std::size_t>(num_arms) * spec.init_per_arm);
  for (int k = 0; k < num_arms; ++k)
    for (int i = 0; i < spec.init_per_arm; ++i) state.forced.push_back(k);
  return state;
}

int choose_arm(const PolicySpec& spec, PolicyState& state, long long n,
               int num_arms, RngStream& rng) {
  if (state.forced_pending()) return state.forced[state.forced_pos++];

  if (n < static_cast<long long>(num_arms) * spec.init_per_arm)
    throw std::invalid_argument("choose_arm: free choice before initialization");

  if (spec.kind == PolicyKind::Thompson) {
    int best = 0;
    double best_value = posterior_draw(spec, state.arms[0], rng);
    for (int k = 1; k < num_arms; ++k) {
      const double v = posterior_draw(spec, state.arms[static_cast<std::size_t>(k)], rng);
      if (v > best_value) {
        best_value = v;
        best = k;
      }
    }
    return best;
  }

  const double b = coefficient(spec, n, num_arms);
  int best = 0;
  double best_value = arm_index(spec, state.arms[0], b);
  for (int k = 1; k < num_arms; ++k) {
    const double v = arm_index(spec, state.arms[static_cast<std::size_t>(k)], b);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  return best;
}

void record_reward(PolicyState& state, int arm, double reward) {
  if (arm < 0 || static_cast<std::size_t>(arm) >= state.arms.size())
    throw std::out_of_range("record_reward: arm index out of range");
  ArmStats& a = state.arms[static_cast<std::size_t>(arm)];
  a.count += 1;
  a.sum += reward;
  a.sum_sq += reward * reward;
}

double posterior_draw(const PolicySpec& spec, const ArmStats& stats,
                      RngStream& rng) {
  switch (spec.family) {
    case Family::NormalKnownVar: {
      if (stats.count < 1)
        throw std::invalid_argument("posterior_draw: need at least one reward");
      const double n1 = static_cast<double>(stats.count) + 1.0;
      return stats.sum / n1 + rng.normal() / std::sqrt(n1);
    }
    case Family::NormalUnknownVar: {
      if (stats.count < 2)
        throw std::invalid_argument("posterior_draw: need two rewards for normal-gamma");
      const double n = static_cast<double>(stats.count);
      const double xbar = stats.mean();
      const double sh = stats.sigma_hat();
      const double shape = 1.0 + 0.5 * n;
      const double rate = 1.0 + 0.5 * n * sh * sh + n * xbar * xbar / (1.0 + n);
      const double tau = rng.gamma(shape) / rate;  // posterior precision
      const double mean = n * xbar / (1.0 + n);
      return mean + rng.normal() / std::sqrt(tau * (1.0 + n));
    }
    case Family::Bernoulli: {
      if (stats.count < 1)
        throw std::invalid_argument("posterior_draw: need at least one reward");
      const double successes = stats.sum;
      return rng.beta(1.0 + successes,
                      1.0 + static_cast<double>(stats.count) - successes);
    }
  }
  throw std::logic_error("posterior_draw: bad family");
}

std::vector<double> ucb_indices(const PolicySpec& spec, const PolicyState& state,
                                long long n, int num_arms) {
  if (spec.kind == PolicyKind::Thompson)
    throw std::invalid_argument("ucb_indices: Thompson has no deterministic index");
  const double b = coefficient(spec, n, num_arms);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(num_arms));
  for (int k = 0; k < num_arms; ++k)
    out.push_back(arm_index(spec, state.arms[static_cast<std::size_t>(k)], b));
  return out;
}

int argmax_smallest_index(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty range");
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best)])
      best = i;
  return best;
}

}  // namespace bandit
