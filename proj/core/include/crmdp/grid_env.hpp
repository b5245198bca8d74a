#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crmdp/instance.hpp"
#include "crmdp/lipschitz.hpp"
#include "crmdp/metric.hpp"

namespace crmdp {

enum class GridAction : ActionId { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

inline constexpr std::array<GridAction, 4> kGridActions = {GridAction::kUp, GridAction::kDown,
                                                           GridAction::kLeft, GridAction::kRight};

std::string_view to_string(GridAction a);

/// Physical description of a gridworld. True reward of a cell is
/// base_reward - chebyshev(cell, goal); corrupt cells are observed as
/// corrupt_observed instead.
struct GridSpec {
  std::string name;
  int width = 5;
  int height = 5;
  GridState goal{0, 0};
  GridState start{4, 4};
  std::vector<GridState> corrupt_cells;
  double base_reward = 10.0;
  double corrupt_observed = 11.0;
  int horizon = 8;
  double metric_scale = 1.0;
};

/// A validated gridworld and the CRMDP it induces. Construction rejects
/// instances whose true reward is not Lipschitz or whose non-corrupt set is
/// empty (SmoothnessViolation); spikiness is only recorded, per LV measure.
class GridEnv {
 public:
  explicit GridEnv(GridSpec spec);

  [[nodiscard]] const GridSpec& spec() const { return spec_; }
  [[nodiscard]] const std::string& name() const { return spec_.name; }
  [[nodiscard]] const CrmdpInstance& instance() const { return instance_; }

  [[nodiscard]] int width() const { return spec_.width; }
  [[nodiscard]] int height() const { return spec_.height; }
  [[nodiscard]] bool contains(GridState c) const {
    return c.row >= 0 && c.col >= 0 && c.row < spec_.height && c.col < spec_.width;
  }
  [[nodiscard]] StateId state_of(GridState c) const {
    return StateId(static_cast<std::size_t>(c.row * spec_.width + c.col));
  }
  [[nodiscard]] GridState cell_of(StateId s) const {
    const int i = static_cast<int>(s.value);
    return {i / spec_.width, i % spec_.width};
  }
  [[nodiscard]] double true_reward(GridState c) const { return instance_.true_reward(state_of(c)); }
  [[nodiscard]] double observed_reward(GridState c) const {
    return instance_.observed_reward(state_of(c));
  }

  /// Condition 3 (spikiness) on the full state space under the given measure.
  [[nodiscard]] bool spiky_under(LvKind kind) const {
    return kind == LvKind::kNlv ? spiky_nlv_ : spiky_tlv_;
  }

  /// Physical equality; the display name is ignored.
  friend bool operator==(const GridEnv& a, const GridEnv& b);

 private:
  GridSpec spec_;
  CrmdpInstance instance_;
  bool spiky_nlv_ = false;
  bool spiky_tlv_ = false;
};

std::string format_cell(GridState c);
std::string format_cell(const GridEnv& env, StateId s);

GridEnv builtin_corners();
GridEnv builtin_ontheway();
/// "corners" or "ontheway" (case-insensitive); nullopt otherwise.
std::optional<GridEnv> builtin_env(std::string_view name);

struct StepOutcome {
  GridState next;
  double observed_reward = 0.0;
  double true_reward = 0.0;  // hidden channel; evaluation only
  bool done = false;
  int step_index = 0;        // steps taken after this move
};

/// One stepping session. Moves into walls leave the position unchanged but
/// still consume a step and collect the cell's reward.
class GridEpisode {
 public:
  explicit GridEpisode(const GridEnv& env);
  GridEpisode(const GridEnv& env, GridState at, int step_index = 0);

  [[nodiscard]] GridState position() const { return env_->cell_of(episode_.state()); }
  [[nodiscard]] bool done() const { return episode_.done(); }
  [[nodiscard]] int steps_taken() const { return episode_.steps_taken(); }

  /// Throws EpisodeOver once the episode has ended.
  StepOutcome step(GridAction action);

 private:
  const GridEnv* env_;
  InstanceEpisode episode_;
};

}  // namespace crmdp
