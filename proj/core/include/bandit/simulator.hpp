#pragma once
/*
Monte-Carlo experiment engine.

A batch draws a fresh environment (arm parameters) per run from the chosen
prior, evaluates every configured policy on that same environment (paired
comparisons), and aggregates regret over runs. All randomness flows through
seeds derived from (base_seed, run, policy, role); see rng.hpp. Results are
keyed by run index, so summaries are identical for any worker count.
*/

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bandit/policies.hpp"
#include "bandit/reward_models.hpp"
#include "bandit/rng.hpp"

namespace bandit {

enum class PriorKind {
  NormalMeansUnitVar,  // mu_k ~ N(0,1), unit variance rewards
  NormalMeansExpVar,   // mu_k ~ N(0,1), sigma_k^2 ~ Exp(mean 1)
  UniformBernoulli,    // p_k ~ Uniform(0,1)
};

struct PriorSpec {
  PriorKind kind = PriorKind::NormalMeansUnitVar;

  Family family() const;
  /// CLI label of the matching experiment: normal-known / normal-unknown / bernoulli.
  std::string example_name() const;
};

struct RunConfig {
  PriorSpec prior;
  int num_arms = 2;              // K
  long long horizon = 1000;      // N, total rewards per run
  int num_runs = 1;              // J
  std::uint64_t base_seed = 1;
  std::vector<PolicySpec> policies;
};

struct RunOutcome {
  std::vector<long long> pulls;  // per-arm counts, sum = horizon
  double regret = 0.0;           // sum of gap_k * pulls_k
  double tilde_regret = 0.0;     // sum of gap_k * (pulls_k - init)^+
  std::uint64_t seed = 0;        // reward-stream seed, for provenance
};

struct RunSummary {
  std::string example;
  std::string policy;
  std::string params;
  double mean_regret = 0.0;
  double se_regret = 0.0;  // sample s.d. / sqrt(J); 0 when J = 1
  double mean_tilde_regret = 0.0;
  double mean_lower_bound = 0.0;  // mean r(env) over runs, diagnostic
  int num_runs = 0;
  int num_arms = 0;
  long long horizon = 0;
  std::uint64_t base_seed = 0;
  double wall_seconds = 0.0;
};

/// K arm-parameter draws from the prior; means first, then (for
/// NormalMeansExpVar) variances, each in arm-index order.
std::vector<ArmDistribution> draw_environment(const PriorSpec& prior,
                                              int num_arms, RngStream& rng);

/// The environment run `run_index` of a batch will see; shared by every
/// policy of that run.
std::vector<ArmDistribution> environment_for_run(const RunConfig& config,
                                                 int run_index);

using PullObserver = std::function<void(long long step, int arm)>;

/// One policy on one environment for `horizon` rewards, drawing rewards
/// lazily at pull time. Streams are built from the two seeds.
RunOutcome run_single(const std::vector<ArmDistribution>& env,
                      const PolicySpec& spec, long long horizon,
                      std::uint64_t reward_seed, std::uint64_t policy_seed,
                      const PullObserver& on_pull = {});

struct BatchResult {
  std::vector<RunSummary> summaries;           // one per policy, config order
  std::vector<std::vector<double>> run_regrets;  // [policy][run]
  std::vector<std::vector<double>> run_tilde_regrets;
};

/// Full batch; threads = 0 picks the hardware concurrency. Output does not
/// depend on the thread count.
BatchResult run_batch_detailed(const RunConfig& config, int threads = 0);
std::vector<RunSummary> run_batch(const RunConfig& config, int threads = 0);

/// Lower-bound reference constant r(env) = sum over inferior arms of
/// gap / D(arm, best): 2/gap per arm for unit-variance normal,
/// gap / M(gap/sigma) for unknown variance, gap / KL for Bernoulli.
/// Returns 0 when no arm is strictly inferior.
double lower_bound_constant(const std::vector<ArmDistribution>& env);

}  // namespace bandit
