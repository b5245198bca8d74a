#include "crmdp/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crmdp {

namespace {

double action_value(const CrmdpInstance& inst, const PolicyValue& pv,
                    std::span<const double> reward, int t, StateId s, ActionId a) {
  const StateId next = inst.next(s, a);
  return reward[next.index()] + pv.value(t + 1, next);
}

bool within_tolerance(double q, double best) {
  return q >= best - kValueTolerance * std::max(1.0, std::abs(best));
}

}  // namespace

PolicyValue plan_value_iteration(const CrmdpInstance& inst, std::span<const double> reward) {
  if (reward.size() != inst.num_states()) {
    throw std::invalid_argument("reward table must have one entry per state");
  }
  const std::size_t n = inst.num_states();
  const int horizon = inst.horizon();

  PolicyValue pv;
  pv.horizon = horizon;
  pv.num_states = n;
  pv.policy.assign(static_cast<std::size_t>(horizon) * n, 0);
  pv.values.assign(static_cast<std::size_t>(horizon + 1) * n, 0.0);

  for (int t = horizon - 1; t >= 0; --t) {
    for (std::size_t i = 0; i < n; ++i) {
      const StateId s(i);
      if (inst.is_terminal(s)) continue;
      double best = -INFINITY;
      for (ActionId a = 0; a < inst.num_actions(); ++a) {
        best = std::max(best, action_value(inst, pv, reward, t, s, a));
      }
      ActionId chosen = 0;
      for (ActionId a = 0; a < inst.num_actions(); ++a) {
        if (within_tolerance(action_value(inst, pv, reward, t, s, a), best)) {
          chosen = a;
          break;
        }
      }
      pv.policy[static_cast<std::size_t>(t) * n + i] = chosen;
      pv.values[static_cast<std::size_t>(t) * n + i] = best;
    }
  }
  pv.optimal_return = pv.value(0, inst.start());
  return pv;
}

std::vector<ActionId> optimal_actions(const CrmdpInstance& inst, const PolicyValue& pv,
                                      std::span<const double> reward, int t, StateId s) {
  std::vector<ActionId> out;
  if (inst.is_terminal(s) || t >= pv.horizon) return out;
  const double best = pv.value(t, s);
  for (ActionId a = 0; a < inst.num_actions(); ++a) {
    if (within_tolerance(action_value(inst, pv, reward, t, s, a), best)) out.push_back(a);
  }
  return out;
}

std::vector<StateId> policy_trajectory(const CrmdpInstance& inst, const PolicyValue& pv) {
  InstanceEpisode ep(inst);
  std::vector<StateId> tau{ep.state()};
  while (!ep.done()) tau.push_back(ep.step(pv.action(ep.steps_taken(), ep.state())));
  return tau;
}

double policy_return(const CrmdpInstance& inst, const PolicyValue& pv,
                     std::span<const double> reward) {
  const auto tau = policy_trajectory(inst, pv);
  double total = 0.0;
  for (std::size_t i = 1; i < tau.size(); ++i) total += reward[tau[i].index()];
  return total;
}

}  // namespace crmdp
