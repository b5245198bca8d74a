#pragma once

#include <span>
#include <vector>

#include "crmdp/instance.hpp"
#include "crmdp/planner.hpp"

namespace crmdp {

/// Lipschitz bounds on the true reward inferred from a reference set of
/// known non-corrupt states.
struct RewardBounds {
  std::vector<double> lower;  // rllb
  std::vector<double> upper;  // rulb
  std::vector<StateId> lower_bounding_state;
  std::vector<StateId> upper_bounding_state;
  StateSet reference_set;

  [[nodiscard]] double lower_at(StateId x) const { return lower[x.index()]; }
  [[nodiscard]] double upper_at(StateId x) const { return upper[x.index()]; }
};

/// lower(x) = max_y C(y) - d(x,y), upper(x) = min_y C(y) + d(x,y) over the
/// reference set. The bounding state is the closest attainer, then the lowest
/// id. Throws EmptyReference for an empty reference set.
RewardBounds compute_bounds(const CrmdpInstance& inst, std::span<const StateId> known_noncorrupt);

struct RegretBound {
  double value = 0.0;
  /// Start state plus entered states of the rulb-optimal trajectory attaining
  /// the supremum.
  std::vector<StateId> worst_trajectory;
};

/// Supremum, over rulb-optimal deterministic policies, of the summed
/// upper - lower gap along their trajectory from the start state. Computed
/// exactly by dynamic programming over the optimal-action sets.
RegretBound regret_upper_bound(const CrmdpInstance& inst, const RewardBounds& bounds);

}  // namespace crmdp
