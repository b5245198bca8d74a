#include <benchmark/benchmark.h>

#include "crmdp/agent.hpp"
#include "crmdp/bounds.hpp"
#include "crmdp/detect.hpp"
#include "crmdp/grid_env.hpp"
#include "crmdp/planner.hpp"

namespace {

using namespace crmdp;

// n x n grid with the goal top-left, start bottom-right, a spike in each far corner.
GridEnv square(int n) {
  GridSpec g = builtin_corners().spec();
  g.height = n;
  g.width = n;
  g.goal = {0, 0};
  g.start = {n - 1, n - 1};
  g.corrupt_cells = {{0, n - 1}, {n - 1, 0}};
  g.horizon = 2 * (n - 1);
  return GridEnv(g);
}

void BM_Identify(benchmark::State& state, ScanStrategy strategy) {
  const GridEnv env = square(static_cast<int>(state.range(0)));
  const auto& inst = env.instance();
  const StateSet all = inst.states();
  for (auto _ : state) {
    benchmark::DoNotOptimize(identify_corrupt_states(all, LvMeasure::nlv(), inst, strategy));
  }
  state.SetComplexityN(static_cast<benchmark::IterationCount>(inst.num_states()));
}
BENCHMARK_CAPTURE(BM_Identify, incremental, ScanStrategy::kIncremental)
    ->RangeMultiplier(2)->Range(4, 32)->Complexity();
BENCHMARK_CAPTURE(BM_Identify, recompute, ScanStrategy::kRecompute)
    ->RangeMultiplier(2)->Range(4, 16)->Complexity();

void BM_Bounds(benchmark::State& state) {
  const GridEnv env = square(static_cast<int>(state.range(0)));
  const auto& inst = env.instance();
  const StateSet clean = inst.non_corrupt_states();
  for (auto _ : state) benchmark::DoNotOptimize(compute_bounds(inst, clean));
}
BENCHMARK(BM_Bounds)->RangeMultiplier(2)->Range(4, 32);

void BM_RegretBound(benchmark::State& state) {
  const GridEnv env = square(static_cast<int>(state.range(0)));
  const auto& inst = env.instance();
  const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
  for (auto _ : state) benchmark::DoNotOptimize(regret_upper_bound(inst, b));
}
BENCHMARK(BM_RegretBound)->RangeMultiplier(2)->Range(4, 32);

void BM_Plan(benchmark::State& state) {
  const GridEnv env = square(static_cast<int>(state.range(0)));
  const auto& inst = env.instance();
  for (auto _ : state) benchmark::DoNotOptimize(plan_value_iteration(inst, inst.true_rewards()));
}
BENCHMARK(BM_Plan)->RangeMultiplier(2)->Range(4, 32);

void BM_LearnOnline(benchmark::State& state) {
  const GridEnv env = builtin_corners();
  AgentConfig cfg;
  cfg.mode = state.range(0) ? AgentMode::kCrmdp : AgentMode::kBaseline;
  cfg.episodes = 2000;
  cfg.epsilon_decay_episodes = 1000;
  cfg.seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(learn_online(env, cfg, LvMeasure::nlv()));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cfg.episodes));
}
BENCHMARK(BM_LearnOnline)->Arg(0)->Arg(1)->ArgNames({"crmdp"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
