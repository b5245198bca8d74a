#pragma once

#include <span>
#include <vector>

#include "crmdp/instance.hpp"
#include "crmdp/lipschitz.hpp"

namespace crmdp {

struct CorruptionReport {
  /// Identified corrupt states, sorted ascending.
  StateSet identified_corrupt;
  /// Candidates in scan order: descending LV over the full candidate set,
  /// ties by ascending StateId.
  std::vector<StateId> scan_order;
  /// LV_candidates(x) for each entry of scan_order, at sort time.
  std::vector<double> scores;

  [[nodiscard]] bool flagged(StateId x) const { return set_contains(identified_corrupt, x); }
};

enum class ScanStrategy {
  kRecompute,    // LV over the remaining set evaluated from scratch at every step
  kIncremental,  // per-state violator counts, decremented as states are flagged
};

/// Offline corrupt-state identification over `candidates` as the universe.
/// Scans states in descending LV order and flags each while its LV against
/// the not-yet-flagged candidates is positive; stops at the first zero.
///
/// Throws AllStatesFlagged for an empty candidate set or if the scan exhausts
/// the candidates.
CorruptionReport identify_corrupt_states(std::span<const StateId> candidates, const LvMeasure& lv,
                                         const CrmdpInstance& inst,
                                         ScanStrategy strategy = ScanStrategy::kIncremental);

/// Identification restricted to the (deduplicated) states of one trajectory.
CorruptionReport identify_in_trajectory(std::span<const StateId> tau, const LvMeasure& lv,
                                        const CrmdpInstance& inst,
                                        ScanStrategy strategy = ScanStrategy::kIncremental);

}  // namespace crmdp
