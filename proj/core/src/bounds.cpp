#include "crmdp/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "crmdp/errors.hpp"

namespace crmdp {

RewardBounds compute_bounds(const CrmdpInstance& inst, std::span<const StateId> known_noncorrupt) {
  RewardBounds b;
  b.reference_set = make_state_set(known_noncorrupt);
  if (b.reference_set.empty()) throw EmptyReference("reward bounds need a non-corrupt reference");

  const std::size_t n = inst.num_states();
  b.lower.resize(n);
  b.upper.resize(n);
  b.lower_bounding_state.resize(n);
  b.upper_bounding_state.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    const StateId x(i);
    double lo = -INFINITY, hi = INFINITY;
    double lo_dist = INFINITY, hi_dist = INFINITY;
    StateId lo_arg{}, hi_arg{};
    // reference_set is ascending, so keeping the first attainer on a distance
    // tie yields the lowest id.
    for (StateId y : b.reference_set) {
      const double d = inst.distance(x, y);
      const double c = inst.observed_reward(y);
      const double cand_lo = c - d;
      if (cand_lo > lo || (cand_lo == lo && d < lo_dist)) {
        lo = cand_lo;
        lo_dist = d;
        lo_arg = y;
      }
      const double cand_hi = c + d;
      if (cand_hi < hi || (cand_hi == hi && d < hi_dist)) {
        hi = cand_hi;
        hi_dist = d;
        hi_arg = y;
      }
    }
    b.lower[i] = lo;
    b.upper[i] = hi;
    b.lower_bounding_state[i] = lo_arg;
    b.upper_bounding_state[i] = hi_arg;
  }
  return b;
}

RegretBound regret_upper_bound(const CrmdpInstance& inst, const RewardBounds& bounds) {
  const std::size_t n = inst.num_states();
  const int horizon = inst.horizon();
  const PolicyValue optimistic = plan_value_iteration(inst, bounds.upper);

  // worst[t][s]: largest gap sum reachable from (t, s) using only
  // rulb-optimal actions.
  std::vector<double> worst(static_cast<std::size_t>(horizon + 1) * n, 0.0);
  std::vector<ActionId> worst_action(static_cast<std::size_t>(horizon) * n, 0);
  auto at = [n](int t, StateId s) { return static_cast<std::size_t>(t) * n + s.index(); };

  for (int t = horizon - 1; t >= 0; --t) {
    for (std::size_t i = 0; i < n; ++i) {
      const StateId s(i);
      double best = 0.0;
      bool first = true;
      for (ActionId a : optimal_actions(inst, optimistic, bounds.upper, t, s)) {
        const StateId next = inst.next(s, a);
        const double g = bounds.upper_at(next) - bounds.lower_at(next) + worst[at(t + 1, next)];
        if (first || g > best) {
          best = g;
          worst_action[at(t, s)] = a;
          first = false;
        }
      }
      worst[at(t, s)] = best;
    }
  }

  RegretBound out;
  out.value = worst[at(0, inst.start())];
  InstanceEpisode ep(inst);
  out.worst_trajectory.push_back(ep.state());
  while (!ep.done()) {
    out.worst_trajectory.push_back(ep.step(worst_action[at(ep.steps_taken(), ep.state())]));
  }
  return out;
}

}  // namespace crmdp
