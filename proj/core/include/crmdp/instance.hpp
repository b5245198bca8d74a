#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "crmdp/metric.hpp"
#include "crmdp/types.hpp"

namespace crmdp {

/// A finite, deterministic, episodic CRMDP: an underlying MDP with true
/// reward R plus the corrupt (observed) reward C, and a state metric d.
///
/// Return accounting: an episode starts at `start()`; every step the agent
/// enters a state and collects that state's reward (the start state's reward
/// is not collected at reset). The episode ends on entering a terminal state
/// or after `horizon()` steps. No discounting.
class CrmdpInstance {
 public:
  CrmdpInstance(std::size_t num_states, std::size_t num_actions,
                std::vector<StateId> transitions, std::vector<double> true_reward,
                std::vector<double> observed_reward, Metric metric, StateId start,
                StateSet terminals, int horizon);

  [[nodiscard]] std::size_t num_states() const { return num_states_; }
  [[nodiscard]] std::size_t num_actions() const { return num_actions_; }
  [[nodiscard]] StateSet states() const { return all_states(num_states_); }

  [[nodiscard]] StateId next(StateId x, ActionId a) const {
    return transitions_[x.index() * num_actions_ + a];
  }
  [[nodiscard]] double true_reward(StateId x) const { return true_reward_[x.index()]; }
  [[nodiscard]] double observed_reward(StateId x) const { return observed_reward_[x.index()]; }
  [[nodiscard]] std::span<const double> true_rewards() const { return true_reward_; }
  [[nodiscard]] std::span<const double> observed_rewards() const { return observed_reward_; }

  [[nodiscard]] const Metric& metric() const { return metric_; }
  [[nodiscard]] double distance(StateId x, StateId y) const { return metric_(x, y); }

  [[nodiscard]] StateId start() const { return start_; }
  [[nodiscard]] const StateSet& terminals() const { return terminals_; }
  [[nodiscard]] bool is_terminal(StateId x) const { return terminal_flags_[x.index()]; }
  [[nodiscard]] int horizon() const { return horizon_; }

  [[nodiscard]] bool is_corrupt(StateId x) const {
    return true_reward_[x.index()] != observed_reward_[x.index()];
  }
  /// S_c = {x : R(x) != C(x)}
  [[nodiscard]] StateSet corrupt_states() const;
  /// S_n = S \ S_c
  [[nodiscard]] StateSet non_corrupt_states() const;

  [[nodiscard]] CrmdpInstance with_observed_reward(std::vector<double> observed) const;
  [[nodiscard]] CrmdpInstance with_metric(Metric metric) const;
  /// Same instance with C := R, i.e. what an agent reading the true channel sees.
  [[nodiscard]] CrmdpInstance uncorrupted() const;

  friend bool operator==(const CrmdpInstance&, const CrmdpInstance&) = default;

 private:
  std::size_t num_states_;
  std::size_t num_actions_;
  std::vector<StateId> transitions_;
  std::vector<double> true_reward_;
  std::vector<double> observed_reward_;
  Metric metric_;
  StateId start_;
  StateSet terminals_;
  std::vector<bool> terminal_flags_;
  int horizon_;
};

/// Single-owner stepping session over an instance.
class InstanceEpisode {
 public:
  explicit InstanceEpisode(const CrmdpInstance& inst);
  InstanceEpisode(const CrmdpInstance& inst, StateId at, int steps_taken);

  [[nodiscard]] StateId state() const { return state_; }
  [[nodiscard]] int steps_taken() const { return steps_; }
  [[nodiscard]] bool done() const { return done_; }

  /// Moves to the successor state; throws EpisodeOver once done.
  StateId step(ActionId action);

 private:
  const CrmdpInstance* inst_;
  StateId state_;
  int steps_;
  bool done_;
};

/// Sum of `reward` over the states entered when following `actions` from the
/// start state, stopping early at episode end.
double path_return(const CrmdpInstance& inst, std::span<const ActionId> actions,
                   std::span<const double> reward);

}  // namespace crmdp
