#pragma once

#include <span>
#include <vector>

#include "crmdp/instance.hpp"

namespace crmdp {

/// Relative tolerance used when comparing action values for optimality.
inline constexpr double kValueTolerance = 1e-9;

/// Exact finite-horizon solution. Optimal policies are time-dependent, so the
/// tables are indexed by (steps taken, state).
struct PolicyValue {
  int horizon = 0;
  std::size_t num_states = 0;
  std::vector<ActionId> policy;  // [t * num_states + s], t in [0, horizon)
  std::vector<double> values;    // [t * num_states + s], t in [0, horizon]
  double optimal_return = 0.0;

  [[nodiscard]] ActionId action(int t, StateId s) const {
    return policy[static_cast<std::size_t>(t) * num_states + s.index()];
  }
  [[nodiscard]] double value(int t, StateId s) const {
    return values[static_cast<std::size_t>(t) * num_states + s.index()];
  }
};

/// Backward induction over steps remaining; the reward of a state is
/// collected on entering it. Ties go to the lowest action id.
PolicyValue plan_value_iteration(const CrmdpInstance& inst, std::span<const double> reward);

/// Action ids whose value at (t, s) is within tolerance of the optimum.
std::vector<ActionId> optimal_actions(const CrmdpInstance& inst, const PolicyValue& pv,
                                      std::span<const double> reward, int t, StateId s);

/// Start state followed by the states entered under `pv`.
std::vector<StateId> policy_trajectory(const CrmdpInstance& inst, const PolicyValue& pv);

/// Return of `pv` from the start state, measured under `reward`.
double policy_return(const CrmdpInstance& inst, const PolicyValue& pv,
                     std::span<const double> reward);

}  // namespace crmdp
