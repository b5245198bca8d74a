#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crmdp/instance.hpp"
#include "crmdp/lipschitz.hpp"

namespace crmdp {

/// A pair (x, y) with |R(x) - R(y)| > d(x, y).
struct SmoothnessWitness {
  StateId x;
  StateId y;
  double reward_gap;
  double distance;
};

/// A corrupt state whose LV against S_n does not exceed the largest LV of a
/// non-corrupt state against S.
struct SpikinessWitness {
  StateId corrupt_state;
  double lv_against_noncorrupt;
  double noncorrupt_sup;
  std::optional<StateId> sup_state;
};

enum class TrajectoryCondition {
  kHolds,       // S_c empty: vacuously true on every trajectory
  kViolated,    // a sampled trajectory falsified it
  kSampledOk,   // every sampled trajectory satisfied it (not a proof)
  kNotSampled,  // S_c nonempty but no trajectories were requested
};

std::string_view to_string(TrajectoryCondition c);

struct AssumptionReport {
  bool cond_nonempty = false;
  bool cond_smooth = false;
  std::vector<SmoothnessWitness> smooth_violations;
  bool cond_spiky = false;
  std::optional<SpikinessWitness> spiky_violation;
  TrajectoryCondition cond_spiky_traj = TrajectoryCondition::kNotSampled;
  std::size_t traj_sample_size = 0;
  std::vector<StateId> traj_counterexample;

  /// Conditions 1-3 all hold.
  [[nodiscard]] bool spiky() const { return cond_nonempty && cond_smooth && cond_spiky; }
};

/// Per-trajectory spikiness on one trajectory (deduplicated internally): every
/// corrupt state of tau violates tau_n more than any tau_n state violates tau.
bool trajectory_condition_holds(const CrmdpInstance& inst, const LvMeasure& lv,
                                std::span<const StateId> trajectory);

/// Start state followed by every state entered under a uniformly random policy.
template <class Rng>
std::vector<StateId> sample_random_trajectory(const CrmdpInstance& inst, Rng& rng);

AssumptionReport check_spiky_assumptions(const CrmdpInstance& inst, const LvMeasure& lv,
                                         std::size_t traj_samples, std::uint64_t seed = 0);

std::string format_report(const AssumptionReport& report, const LvMeasure& lv);

}  // namespace crmdp

#include <random>

namespace crmdp {

template <class Rng>
std::vector<StateId> sample_random_trajectory(const CrmdpInstance& inst, Rng& rng) {
  std::uniform_int_distribution<ActionId> pick(0, static_cast<ActionId>(inst.num_actions() - 1));
  InstanceEpisode ep(inst);
  std::vector<StateId> tau{ep.state()};
  while (!ep.done()) tau.push_back(ep.step(pick(rng)));
  return tau;
}

}  // namespace crmdp
