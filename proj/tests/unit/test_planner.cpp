#include <gtest/gtest.h>

#include "crmdp/bounds.hpp"
#include "crmdp/grid_env.hpp"
#include "crmdp/planner.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace crmdp {
namespace {

TEST(Planner, TrueOptimumOnBuiltins) {
  for (const GridEnv& env : {builtin_corners(), builtin_ontheway()}) {
    const auto& inst = env.instance();
    const PolicyValue pv = plan_value_iteration(inst, inst.true_rewards());
    EXPECT_EQ(pv.optimal_return, 64.0) << env.name();
    EXPECT_EQ(policy_return(inst, pv, inst.true_rewards()), 64.0);
    EXPECT_EQ(oracle::best_return(oracle::enumerate_paths(inst), inst.true_rewards()), 64.0);
  }
}

TEST(Planner, OptimalPathEndsAtGoal) {
  const GridEnv env = builtin_corners();
  const auto& inst = env.instance();
  const auto tau = policy_trajectory(inst, plan_value_iteration(inst, inst.true_rewards()));
  ASSERT_EQ(tau.size(), 9u);
  EXPECT_EQ(tau.front(), env.state_of({4, 4}));
  EXPECT_EQ(tau.back(), env.state_of({0, 0}));
}

TEST(Planner, CorruptOptimumOnBuiltins) {
  for (const GridEnv& env : {builtin_corners(), builtin_ontheway()}) {
    const auto& inst = env.instance();
    const PolicyValue pv = plan_value_iteration(inst, inst.observed_rewards());
    EXPECT_EQ(pv.optimal_return, 73.0);
    EXPECT_EQ(policy_return(inst, pv, inst.true_rewards()), 48.0);
  }
}

TEST(Planner, LowerBoundPlanRecoversTrueOptimum) {
  for (const GridEnv& env : {builtin_corners(), builtin_ontheway()}) {
    const auto& inst = env.instance();
    const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
    const PolicyValue pv = plan_value_iteration(inst, b.lower);
    EXPECT_EQ(policy_return(inst, pv, inst.true_rewards()), 64.0) << env.name();
  }
}

TEST(Planner, OnTheWayOptimumMustCrossCorruption) {
  const GridEnv env = builtin_ontheway();
  const auto& inst = env.instance();
  EXPECT_FALSE(oracle::admits_corruption_avoiding_optimum(inst, oracle::enumerate_paths(inst)));
  EXPECT_TRUE(oracle::admits_corruption_avoiding_optimum(
      builtin_corners().instance(), oracle::enumerate_paths(builtin_corners().instance())));
}

TEST(Planner, TiesGoToTheFirstAction) {
  // Every action leads to the same state: the policy picks action 0.
  const CrmdpInstance inst(2, 3, {StateId(1), StateId(1), StateId(1), StateId(0), StateId(0),
                                  StateId(0)},
                           {0, 1}, {0, 1}, testgen::l1_metric({{0, 0}, {0, 1}}), StateId(0), {}, 3);
  const PolicyValue pv = plan_value_iteration(inst, inst.true_rewards());
  for (int t = 0; t < 3; ++t) EXPECT_EQ(pv.action(t, StateId(0)), 0u);
  EXPECT_EQ(optimal_actions(inst, pv, inst.true_rewards(), 0, StateId(0)).size(), 3u);
  EXPECT_EQ(pv.optimal_return, 2.0);
}

TEST(Planner, RejectsMismatchedRewardTable) {
  const GridEnv env = builtin_corners();
  const auto& inst = env.instance();
  const std::vector<double> r(3, 0.0);
  EXPECT_THROW(plan_value_iteration(inst, r), std::invalid_argument);
}

TEST(PlannerProperty, MatchesPathEnumeration) {
  testgen::Rng rng(41);
  testgen::MetricGenOptions opts;
  opts.max_states = 12;
  for (int k = 0; k < 300; ++k) {
    const auto g = testgen::random_metric_instance(rng, opts);
    const auto paths = oracle::enumerate_paths(g.inst);
    for (auto reward : {g.inst.true_rewards(), g.inst.observed_rewards()}) {
      const PolicyValue pv = plan_value_iteration(g.inst, reward);
      const double best = oracle::best_return(paths, reward);
      EXPECT_EQ(pv.optimal_return, best);
      EXPECT_EQ(policy_return(g.inst, pv, reward), best);
    }
  }
}

}  // namespace
}  // namespace crmdp
