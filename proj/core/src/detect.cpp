#include "crmdp/detect.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "crmdp/errors.hpp"

namespace crmdp {

namespace {

// Scan order: descending score, ascending id among equal scores.
void sort_candidates(const StateSet& universe, const LvMeasure& lv, const CrmdpInstance& inst,
                     CorruptionReport& report) {
  std::vector<double> full(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    full[i] = lv.evaluate(universe[i], universe, inst);
  }
  std::vector<std::size_t> order(universe.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return full[a] > full[b]; });
  report.scan_order.reserve(order.size());
  report.scores.reserve(order.size());
  for (std::size_t i : order) {
    report.scan_order.push_back(universe[i]);
    report.scores.push_back(full[i]);
  }
}

void scan_recompute(const StateSet& universe, const LvMeasure& lv, const CrmdpInstance& inst,
                    CorruptionReport& report) {
  StateSet remaining = universe;
  for (StateId x : report.scan_order) {
    if (lv.evaluate(x, remaining, inst) == 0.0) return;
    report.identified_corrupt.push_back(x);
    remaining.erase(std::lower_bound(remaining.begin(), remaining.end(), x));
  }
  throw AllStatesFlagged("every candidate state was flagged as corrupt");
}

// LV_A(x) is zero exactly when no y in A violates the Lipschitz condition with
// x (weights are strictly positive), so tracking violator counts is exact.
void scan_incremental(const StateSet& universe, const CrmdpInstance& inst,
                      CorruptionReport& report) {
  const std::size_t n = universe.size();
  std::vector<std::size_t> position(inst.num_states(), n);
  for (std::size_t i = 0; i < n; ++i) position[universe[i].index()] = i;

  std::vector<std::size_t> violators(n, 0);
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (violates_lipschitz(inst, universe[i], universe[j])) {
        ++violators[i];
        ++violators[j];
        adjacency[i].push_back(j);
        adjacency[j].push_back(i);
      }
    }
  }
  for (StateId x : report.scan_order) {
    const std::size_t i = position[x.index()];
    if (violators[i] == 0) return;
    report.identified_corrupt.push_back(x);
    for (std::size_t j : adjacency[i]) --violators[j];
  }
  throw AllStatesFlagged("every candidate state was flagged as corrupt");
}

}  // namespace

CorruptionReport identify_corrupt_states(std::span<const StateId> candidates, const LvMeasure& lv,
                                         const CrmdpInstance& inst, ScanStrategy strategy) {
  const StateSet universe = make_state_set(candidates);
  if (universe.empty()) {
    throw AllStatesFlagged("empty candidate set has no non-corrupt reference");
  }
  for (StateId x : universe) {
    if (x.index() >= inst.num_states()) throw std::invalid_argument("candidate out of range");
  }

  CorruptionReport report;
  sort_candidates(universe, lv, inst, report);
  if (strategy == ScanStrategy::kRecompute) {
    scan_recompute(universe, lv, inst, report);
  } else {
    scan_incremental(universe, inst, report);
  }
  std::sort(report.identified_corrupt.begin(), report.identified_corrupt.end());
  return report;
}

CorruptionReport identify_in_trajectory(std::span<const StateId> tau, const LvMeasure& lv,
                                        const CrmdpInstance& inst, ScanStrategy strategy) {
  return identify_corrupt_states(make_state_set(tau), lv, inst, strategy);
}

}  // namespace crmdp
