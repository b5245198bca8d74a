#pragma once

#include <span>
#include <vector>

#include "crmdp/instance.hpp"
#include "crmdp/lipschitz.hpp"
#include "crmdp/types.hpp"

// Direct, loop-for-loop reference computations used to cross-check the
// library. Nothing here shares code with core/.
namespace crmdp::oracle {

double nlv(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference,
           const std::vector<double>& weights = {});
double tlv(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference,
           const std::vector<double>& weights = {});
double lv(const CrmdpInstance& inst, LvKind kind, StateId x, std::span<const StateId> reference);

/// Every complete episode from the start state: one entry per action
/// sequence, stopping at a terminal or the horizon.
struct Path {
  std::vector<ActionId> actions;
  std::vector<StateId> states;  // includes the start state
};
std::vector<Path> enumerate_paths(const CrmdpInstance& inst);

double path_value(const Path& path, std::span<const double> reward);
double best_return(const std::vector<Path>& paths, std::span<const double> reward);

double rllb(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference);
double rulb(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference);

/// Largest true-reward regret among paths that are optimal for `upper`.
double worst_regret_of_optimal(const CrmdpInstance& inst, const std::vector<Path>& paths,
                               std::span<const double> upper);

/// True when some R-optimal path never enters a corrupt state.
bool admits_corruption_avoiding_optimum(const CrmdpInstance& inst, const std::vector<Path>& paths);

/// Exact conditions 1-3 for one LV measure, evaluated from definitions.
bool spiky(const CrmdpInstance& inst, LvKind kind);

/// Momentum-0.9 moving average started at the first value.
std::vector<double> ema(const std::vector<double>& values, double momentum = 0.9);

}  // namespace crmdp::oracle
