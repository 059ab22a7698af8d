#include "bandit/simulator.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bandit {

Family PriorSpec::family() const {
  switch (kind) {
    case PriorKind::NormalMeansUnitVar: return Family::NormalKnownVar;
    case PriorKind::NormalMeansExpVar: return Family::NormalUnknownVar;
    case PriorKind::UniformBernoulli: return Family::Bernoulli;
  }
  throw std::logic_error("PriorSpec: bad kind");
}

std::string PriorSpec::example_name() const {
  switch (kind) {
    case PriorKind::NormalMeansUnitVar: return "normal-known";
    case PriorKind::NormalMeansExpVar: return "normal-unknown";
    case PriorKind::UniformBernoulli: return "bernoulli";
  }
  throw std::logic_error("PriorSpec: bad kind");
}

std::vector<ArmDistribution> draw_environment(const PriorSpec& prior,
                                              int num_arms, RngStream& rng) {
  if (num_arms < 1) throw std::invalid_argument("draw_environment: need K >= 1");
  std::vector<ArmDistribution> env;
  env.reserve(static_cast<std::size_t>(num_arms));
  switch (prior.kind) {
    case PriorKind::NormalMeansUnitVar:
      for (int k = 0; k < num_arms; ++k)
        env.push_back(ArmDistribution::normal_known(rng.normal()));
      break;
    case PriorKind::NormalMeansExpVar: {
      std::vector<double> means(static_cast<std::size_t>(num_arms));
      for (double& m : means) m = rng.normal();
      for (int k = 0; k < num_arms; ++k) {
        double s2 = rng.exponential();
        while (s2 == 0.0) s2 = rng.exponential();  // sigma2 must be positive
        env.push_back(ArmDistribution::normal_unknown(means[static_cast<std::size_t>(k)], s2));
      }
      break;
    }
    case PriorKind::UniformBernoulli:
      for (int k = 0; k < num_arms; ++k)
        env.push_back(ArmDistribution::bernoulli(rng.uniform01()));
      break;
  }
  return env;
}

std::vector<ArmDistribution> environment_for_run(const RunConfig& config,
                                                 int run_index) {
  RngStream rng(derive_stream_seed(config.base_seed,
                                   static_cast<std::uint64_t>(run_index), 0,
                                   StreamRole::Environment));
  return draw_environment(config.prior, config.num_arms, rng);
}

RunOutcome run_single(const std::vector<ArmDistribution>& env,
                      const PolicySpec& spec, long long horizon,
                      std::uint64_t reward_seed, std::uint64_t policy_seed,
                      const PullObserver& on_pull) {
  const int num_arms = static_cast<int>(env.size());
  if (num_arms < 1) throw std::invalid_argument("run_single: empty environment");
  for (const ArmDistribution& a : env)
    if (a.family != spec.family)
      throw std::invalid_argument("run_single: environment family does not match policy");
  if (horizon < static_cast<long long>(num_arms) * spec.init_per_arm)
    throw std::invalid_argument("run_single: horizon below initial allocation");

  RngStream reward_rng(reward_seed);
  RngStream policy_rng(policy_seed);
  PolicyState state = init_state(spec, num_arms);

  for (long long n = 0; n < horizon; ++n) {
    const int k = choose_arm(spec, state, n, num_arms, policy_rng);
    const double x = draw_reward(env[static_cast<std::size_t>(k)], reward_rng);
    record_reward(state, k, x);
    if (on_pull) on_pull(n, k);
  }

  RunOutcome out;
  out.seed = reward_seed;
  out.pulls.reserve(static_cast<std::size_t>(num_arms));
  long long total = 0;
  for (const ArmStats& a : state.arms) {
    out.pulls.push_back(a.count);
    total += a.count;
  }
  if (total != horizon) throw std::logic_error("run_single: pull counts do not sum to N");

  double mu_star = dist_mean(env[0]);
  for (const ArmDistribution& a : env) mu_star = std::max(mu_star, dist_mean(a));
  for (int k = 0; k < num_arms; ++k) {
    const double gap = mu_star - dist_mean(env[static_cast<std::size_t>(k)]);
    const long long pulls = out.pulls[static_cast<std::size_t>(k)];
    const long long extra = pulls > spec.init_per_arm ? pulls - spec.init_per_arm : 0;
    out.regret += gap * static_cast<double>(pulls);
    out.tilde_regret += gap * static_cast<double>(extra);
  }
  return out;
}

namespace {

struct Accumulator {
  std::vector<double> regrets;
  std::vector<double> tildes;
  std::vector<double> walls;
};

}  // namespace

BatchResult run_batch_detailed(const RunConfig& config, int threads) {
  const int num_policies = static_cast<int>(config.policies.size());
  if (num_policies < 1) throw std::invalid_argument("run_batch: no policies");
  if (config.num_runs < 1) throw std::invalid_argument("run_batch: need J >= 1");
  if (config.num_arms < 1) throw std::invalid_argument("run_batch: need K >= 1");
  for (const PolicySpec& p : config.policies) {
    if (p.family != config.prior.family())
      throw std::invalid_argument("run_batch: policy family does not match prior");
    if (config.horizon < static_cast<long long>(config.num_arms) * p.init_per_arm)
      throw std::invalid_argument("run_batch: horizon below initial allocation");
  }

  const int J = config.num_runs;
  std::vector<Accumulator> acc(static_cast<std::size_t>(num_policies));
  for (Accumulator& a : acc) {
    a.regrets.assign(static_cast<std::size_t>(J), 0.0);
    a.tildes.assign(static_cast<std::size_t>(J), 0.0);
    a.walls.assign(static_cast<std::size_t>(J), 0.0);
  }
  std::vector<double> lower_bounds(static_cast<std::size_t>(J), 0.0);

  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, J);

  std::atomic<int> next_run{0};
  auto work = [&]() {
    for (;;) {
      const int j = next_run.fetch_add(1);
      if (j >= J) return;
      const std::vector<ArmDistribution> env = environment_for_run(config, j);
      lower_bounds[static_cast<std::size_t>(j)] = lower_bound_constant(env);
      for (int i = 0; i < num_policies; ++i) {
        const std::uint64_t rs = derive_stream_seed(
            config.base_seed, static_cast<std::uint64_t>(j),
            static_cast<std::uint64_t>(i) + 1, StreamRole::Rewards);
        const std::uint64_t ps = derive_stream_seed(
            config.base_seed, static_cast<std::uint64_t>(j),
            static_cast<std::uint64_t>(i) + 1, StreamRole::PolicyNoise);
        const auto t0 = std::chrono::steady_clock::now();
        const RunOutcome out = run_single(env, config.policies[static_cast<std::size_t>(i)],
                                          config.horizon, rs, ps);
        const auto t1 = std::chrono::steady_clock::now();
        Accumulator& a = acc[static_cast<std::size_t>(i)];
        a.regrets[static_cast<std::size_t>(j)] = out.regret;
        a.tildes[static_cast<std::size_t>(j)] = out.tilde_regret;
        a.walls[static_cast<std::size_t>(j)] =
            std::chrono::duration<double>(t1 - t0).count();
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  double mean_lb = 0.0;
  for (double v : lower_bounds) mean_lb += v;
  mean_lb /= static_cast<double>(J);

  BatchResult result;
  result.summaries.reserve(static_cast<std::size_t>(num_policies));
  for (int i = 0; i < num_policies; ++i) {
    Accumulator& a = acc[static_cast<std::size_t>(i)];
    double mean = 0.0, mean_tilde = 0.0, wall = 0.0;
    for (int j = 0; j < J; ++j) {
      mean += a.regrets[static_cast<std::size_t>(j)];
      mean_tilde += a.tildes[static_cast<std::size_t>(j)];
      wall += a.walls[static_cast<std::size_t>(j)];
    }
    mean /= static_cast<double>(J);
    mean_tilde /= static_cast<double>(J);
    double se = 0.0;
    if (J > 1) {
      double ss = 0.0;
      for (int j = 0; j < J; ++j) {
        const double d = a.regrets[static_cast<std::size_t>(j)] - mean;
        ss += d * d;
      }
      se = std::sqrt(ss / static_cast<double>(J - 1) / static_cast<double>(J));
    }

    const PolicySpec& spec = config.policies[static_cast<std::size_t>(i)];
    RunSummary s;
    s.example = config.prior.example_name();
    s.policy = spec.label();
    s.params = spec.params_string();
    s.mean_regret = mean;
    s.se_regret = se;
    s.mean_tilde_regret = mean_tilde;
    s.mean_lower_bound = mean_lb;
    s.num_runs = J;
    s.num_arms = config.num_arms;
    s.horizon = config.horizon;
    s.base_seed = config.base_seed;
    s.wall_seconds = wall;
    result.summaries.push_back(std::move(s));
    result.run_regrets.push_back(std::move(a.regrets));
    result.run_tilde_regrets.push_back(std::move(a.tildes));
  }
  return result;
}

std::vector<RunSummary> run_batch(const RunConfig& config, int threads) {
  return run_batch_detailed(config, threads).summaries;
}

double lower_bound_constant(const std::vector<ArmDistribution>& env) {
  if (env.empty()) throw std::invalid_argument("lower_bound_constant: empty environment");
  const Family family = env[0].family;
  for (const ArmDistribution& a : env)
    if (a.family != family)
      throw std::invalid_argument("lower_bound_constant: mixed families");

  double mu_star = dist_mean(env[0]);
  for (const ArmDistribution& a : env) mu_star = std::max(mu_star, dist_mean(a));

  double r = 0.0;
  for (const ArmDistribution& a : env) {
    const double gap = mu_star - dist_mean(a);
    if (!(gap > 0.0)) continue;
    switch (family) {
      case Family::NormalKnownVar:
        r += 2.0 / gap;
        break;
      case Family::NormalUnknownVar:
        r += gap / m_function(gap / std::sqrt(a.sigma2));
        break;
      case Family::Bernoulli: {
        const double d = rate_bernoulli(mu_star, a.p);
        if (std::isfinite(d)) r += gap / d;
        break;
      }
    }
  }
  return r;
}

}  // namespace bandit
