#include <gtest/gtest.h>

#include "crmdp/bounds.hpp"
#include "crmdp/errors.hpp"
#include "crmdp/grid_env.hpp"
#include "crmdp/planner.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace crmdp {
namespace {

TEST(Bounds, CornersCorruptCorner) {
  const GridEnv env = builtin_corners();
  const auto& inst = env.instance();
  const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
  const StateId x = env.state_of({0, 4});
  EXPECT_EQ(b.lower_at(x), 6.0);
  EXPECT_EQ(b.upper_at(x), 7.0);
  EXPECT_EQ(b.lower_bounding_state[x.index()], env.state_of({0, 3}));
  EXPECT_EQ(b.upper_bounding_state[x.index()], env.state_of({1, 4}));
}

TEST(Bounds, ReferenceStatesBoundThemselves) {
  const GridEnv env = builtin_ontheway();
  const auto& inst = env.instance();
  const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
  for (StateId x : inst.non_corrupt_states()) {
    EXPECT_EQ(b.lower_at(x), inst.observed_reward(x));
    EXPECT_EQ(b.upper_at(x), inst.observed_reward(x));
    EXPECT_EQ(b.lower_bounding_state[x.index()], x);
    EXPECT_EQ(b.upper_bounding_state[x.index()], x);
  }
}

TEST(Bounds, OnTheWayInteriorCorruptCell) {
  const GridEnv env = builtin_ontheway();
  const auto& inst = env.instance();
  const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
  const StateId x = env.state_of({1, 2});
  EXPECT_EQ(b.lower_at(x), 8.0);
  EXPECT_EQ(b.lower_bounding_state[x.index()], env.state_of({1, 1}));
  EXPECT_EQ(b.lower_at(x), inst.true_reward(x));
}

TEST(Bounds, BoundingStatePrefersClosestThenLowestId) {
  // States on a line at 0,1,2; the middle one is unknown. Both ends attain
  // the same lower bound at the same distance, so the lower id wins.
  const Metric m = testgen::l1_metric({{0, 0}, {0, 1}, {0, 2}});
  const CrmdpInstance inst(3, 1, {StateId(0), StateId(1), StateId(2)}, {5, 5, 5}, {5, 9, 5}, m,
                           StateId(0), {}, 2);
  const RewardBounds b = compute_bounds(inst, StateSet{StateId(0), StateId(2)});
  EXPECT_EQ(b.lower_at(StateId(1)), 4.0);
  EXPECT_EQ(b.upper_at(StateId(1)), 6.0);
  EXPECT_EQ(b.lower_bounding_state[1], StateId(0));
  EXPECT_EQ(b.upper_bounding_state[1], StateId(0));
}

TEST(Bounds, EmptyReferenceThrows) {
  EXPECT_THROW(compute_bounds(builtin_corners().instance(), {}), EmptyReference);
}

TEST(Bounds, SandwichOnBuiltins) {
  for (const GridEnv& env : {builtin_corners(), builtin_ontheway()}) {
    const auto& inst = env.instance();
    const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
    for (StateId x : inst.states()) {
      EXPECT_LE(b.lower_at(x), inst.true_reward(x));
      EXPECT_GE(b.upper_at(x), inst.true_reward(x));
      EXPECT_EQ(b.lower_at(x), oracle::rllb(inst, x, inst.non_corrupt_states()));
      EXPECT_EQ(b.upper_at(x), oracle::rulb(inst, x, inst.non_corrupt_states()));
    }
  }
}

TEST(Regret, ZeroWithoutCorruption) {
  const CrmdpInstance inst = builtin_corners().instance().uncorrupted();
  EXPECT_EQ(regret_upper_bound(inst, compute_bounds(inst, inst.states())).value, 0.0);
}

TEST(Regret, SingleCorruptStateOnChain) {
  // 0 -> 1 -> 2 -> 3, one action; state 2 is corrupt.
  const Metric m = testgen::l1_metric({{0, 0}, {0, 1}, {0, 2}, {0, 3}});
  const CrmdpInstance inst(4, 1, {StateId(1), StateId(2), StateId(3), StateId(3)}, {1, 2, 2, 2},
                           {1, 2, 20, 2}, m, StateId(0), {StateId(3)}, 5);
  const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
  const StateId c(2);
  const RegretBound r = regret_upper_bound(inst, b);
  EXPECT_EQ(r.value, b.upper_at(c) - b.lower_at(c));
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.worst_trajectory, (std::vector<StateId>{StateId(0), StateId(1), c, StateId(3)}));
}

TEST(Regret, CornersBoundCoversEveryOptimisticPolicy) {
  const GridEnv env = builtin_corners();
  const auto& inst = env.instance();
  const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
  const auto paths = oracle::enumerate_paths(inst);
  EXPECT_GE(regret_upper_bound(inst, b).value,
            oracle::worst_regret_of_optimal(inst, paths, b.upper));
}

TEST(BoundsProperty, SandwichMonotoneAndRegretSound) {
  testgen::Rng rng(31);
  testgen::MetricGenOptions opts;
  opts.max_states = 12;
  opts.max_actions = 3;
  for (int k = 0; k < 250; ++k) {
    const auto g = testgen::random_metric_instance(rng, opts);
    const CrmdpInstance& inst = g.inst;
    const StateSet clean = inst.non_corrupt_states();
    const StateSet small = testgen::random_subset(rng, clean, 0.5);
    const RewardBounds full = compute_bounds(inst, clean);
    for (StateId x : inst.states()) {
      EXPECT_LE(full.lower_at(x), inst.true_reward(x));
      EXPECT_GE(full.upper_at(x), inst.true_reward(x));
    }
    if (!small.empty()) {
      const RewardBounds part = compute_bounds(inst, small);
      for (StateId x : inst.states()) {
        EXPECT_LE(part.lower_at(x), full.lower_at(x));
        EXPECT_GE(part.upper_at(x), full.upper_at(x));
      }
    }
    const auto paths = oracle::enumerate_paths(inst);
    EXPECT_GE(regret_upper_bound(inst, full).value + 1e-9,
              oracle::worst_regret_of_optimal(inst, paths, full.upper));
  }
}

TEST(BoundsProperty, LowerBoundPlanningIsOptimalWhenCorruptionAvoidable) {
  testgen::Rng rng(37);
  testgen::MetricGenOptions opts;
  opts.max_states = 12;
  opts.max_actions = 3;
  int checked = 0;
  for (int k = 0; k < 300; ++k) {
    const auto g = testgen::random_metric_instance(rng, opts);
    const auto paths = oracle::enumerate_paths(g.inst);
    if (!oracle::admits_corruption_avoiding_optimum(g.inst, paths)) continue;
    ++checked;
    const RewardBounds b = compute_bounds(g.inst, g.inst.non_corrupt_states());
    const PolicyValue pv = plan_value_iteration(g.inst, b.lower);
    EXPECT_EQ(policy_return(g.inst, pv, g.inst.true_rewards()),
              oracle::best_return(paths, g.inst.true_rewards()));
  }
  EXPECT_GT(checked, 100);
}

}  // namespace
}  // namespace crmdp
