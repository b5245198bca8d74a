#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "crmdp/grid_env.hpp"

namespace crmdp {

// Environment files are line oriented:
//
//   base_reward = 10
//   corrupt_observed = 11
//   horizon = 8
//   metric = manhattan
//   reward_rule = chebyshev_to_goal
//
//   G...X
//   .....
//   .....
//   .....
//   X...A
//
// Header keys are optional (defaults as in GridSpec) and may also include
// `metric_scale = <positive real>`. Lines starting with '#' in the header are
// ignored. Grid characters: G goal, A start, X corrupt, '.' normal.

/// Throws ParseError on malformed input and SmoothnessViolation when the
/// described instance breaks condition 1 or 2.
GridEnv parse_env(std::string_view text, std::string name = "custom");

std::string serialize_env(const GridEnv& env);

/// Builtin name ("corners", "ontheway") or a path to an environment file.
GridEnv load_env(const std::string& name_or_path);

}  // namespace crmdp
