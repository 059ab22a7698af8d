#include <benchmark/benchmark.h>

#include <cmath>

#include "bandit/confidence.hpp"
#include "bandit/policies.hpp"
#include "bandit/simulator.hpp"

using namespace bandit;

namespace {

void BM_UcbNormalKnown(benchmark::State& state) {
  double b = 3.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ucb_normal_known(0.42, 137, b));
    b += 1e-9;
  }
}
BENCHMARK(BM_UcbNormalKnown);

void BM_UcbNormalUnknown(benchmark::State& state) {
  double b = 3.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ucb_normal_unknown(0.42, 1.3, 137, b));
    b += 1e-9;
  }
}
BENCHMARK(BM_UcbNormalUnknown);

// t sweeps from the fast contraction regime into the fallback regime
void BM_UcbBernoulli(benchmark::State& state) {
  const long long t = state.range(0);
  const double b = 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(ucb_bernoulli(0.9, t, b));
}
BENCHMARK(BM_UcbBernoulli)->Arg(10)->Arg(100)->Arg(1000)->Arg(10000);

void BM_GenericUcbBernoulli(benchmark::State& state) {
  const long long t = state.range(0);
  const double b = 4.0;
  for (auto _ : state)
    benchmark::DoNotOptimize(generic_ucb(rate_bernoulli, 0.9, t, b, 1.0));
}
BENCHMARK(BM_GenericUcbBernoulli)->Arg(10)->Arg(10000);

void BM_PosteriorDraw(benchmark::State& state) {
  RngStream rng(7);
  const auto spec = PolicySpec::thompson(static_cast<Family>(state.range(0)));
  const ArmStats stats{40, 17.0, 19.0};
  for (auto _ : state) benchmark::DoNotOptimize(posterior_draw(spec, stats, rng));
}
BENCHMARK(BM_PosteriorDraw)
    ->Arg(static_cast<int>(Family::NormalKnownVar))
    ->Arg(static_cast<int>(Family::NormalUnknownVar))
    ->Arg(static_cast<int>(Family::Bernoulli));

void BM_RunSingle(benchmark::State& state) {
  const int K = static_cast<int>(state.range(0));
  RngStream env_rng(11);
  const auto env = draw_environment(PriorSpec{PriorKind::UniformBernoulli}, K, env_rng);
  const auto spec = PolicySpec::ucb_large(Family::Bernoulli, Schedule::chi_log(0.5));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    ++seed;
    const auto out = run_single(env, spec, 2000, seed, seed);
    benchmark::DoNotOptimize(out.regret);
  }
}
BENCHMARK(BM_RunSingle)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
