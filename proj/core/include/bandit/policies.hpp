#pragma once
/*
Sequential arm-selection policies.

Each policy keeps per-arm sufficient statistics and, given the total reward
count n, names the next arm to pull: UCB policies pull the arm with largest
confidence bound, Thompson sampling pulls the argmax of one posterior draw
per arm. Arms are indexed 0..K-1; ties always break to the smallest index
so that runs replay bit-exactly.

The policies differ only in the coefficient fed to the family's bound:

  ucb-large      b = schedule(n / K^(1-q))   arm-size corrected
  ucb-agrawal    b = schedule(n)             classical
  ucb-bk         b = log n, divisor t        unknown-variance baseline
*/

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "bandit/confidence.hpp"
#include "bandit/reward_models.hpp"
#include "bandit/rng.hpp"

namespace bandit {

struct ArmStats {
  long long count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  double mean() const { return sum / static_cast<double>(count); }

  /// Biased sample s.d. (divisor count), floored at 0 against rounding.
  double sigma_hat() const {
    const double m = mean();
    const double var = sum_sq / static_cast<double>(count) - m * m;
    return var > 0.0 ? std::sqrt(var) : 0.0;
  }
};

enum class PolicyKind { UcbLarge, UcbAgrawal, UcbBK, Thompson };

struct PolicySpec {
  PolicyKind kind = PolicyKind::UcbLarge;
  Family family = Family::NormalKnownVar;
  Schedule schedule;     // UCB-Large / UCB-Agrawal only
  double perturb_q = 0;  // UCB-Large exponent in n / K^(1-q), 0 <= q < 1
  int init_per_arm = 1;  // 2 for NormalUnknownVar, else 1

  static PolicySpec ucb_large(Family family, Schedule schedule, double q = 0.0);
  static PolicySpec ucb_agrawal(Family family, Schedule schedule);
  static PolicySpec ucb_bk();  // NormalUnknownVar only
  static PolicySpec thompson(Family family);

  std::string label() const;          // "ucb-large", "ucb-agrawal", ...
  std::string params_string() const;  // "chi=0.5", "schedule=log-sqrt", ...
};

struct PolicyState {
  std::vector<ArmStats> arms;
  std::vector<int> forced;  // initial-allocation queue, arm indices in order
  std::size_t forced_pos = 0;

  bool forced_pending() const { return forced_pos < forced.size(); }
};

/// K empty arms plus a forced queue of init_per_arm pulls per arm, arm 0 first.
PolicyState init_state(const PolicySpec& spec, int num_arms);

/// Next arm to pull given n total rewards so far. Pops the forced queue if
/// nonempty; otherwise argmax of the policy's per-arm index. Only Thompson
/// consumes rng (one posterior draw per arm, in arm order).
int choose_arm(const PolicySpec& spec, PolicyState& state, long long n,
               int num_arms, RngStream& rng);

void record_reward(PolicyState& state, int arm, double reward);

/// One draw from the arm's posterior under the policy's conjugate prior:
/// NormalKnownVar  N(sum/(count+1), 1/(count+1))           count >= 1
/// NormalUnknownVar normal-gamma:                          count >= 2
///     tau ~ Gamma(1 + count/2,
///                 rate 1 + count*sigma_hat^2/2 + count*mean^2/(1+count)),
///     mu | tau ~ N(count*mean/(1+count), 1/(tau*(1+count)))
/// Bernoulli       Beta(1 + sum, 1 + count - sum)           count >= 1
double posterior_draw(const PolicySpec& spec, const ArmStats& stats,
                      RngStream& rng);

/// Per-arm UCB indices for the current state (UCB kinds only; diagnostics
/// and tests; choose_arm computes the same values without allocating).
std::vector<double> ucb_indices(const PolicySpec& spec, const PolicyState& state,
                                long long n, int num_arms);

/// Index of the largest value; ties to the smallest index.
int argmax_smallest_index(std::span<const double> values);

}  // namespace bandit
