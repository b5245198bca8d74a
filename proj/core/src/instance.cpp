#include "crmdp/instance.hpp"

#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "crmdp/errors.hpp"

namespace crmdp {

CrmdpInstance::CrmdpInstance(std::size_t num_states, std::size_t num_actions,
                             std::vector<StateId> transitions, std::vector<double> true_reward,
                             std::vector<double> observed_reward, Metric metric, StateId start,
                             StateSet terminals, int horizon)
    : num_states_(num_states),
      num_actions_(num_actions),
      transitions_(std::move(transitions)),
      true_reward_(std::move(true_reward)),
      observed_reward_(std::move(observed_reward)),
      metric_(std::move(metric)),
      start_(start),
      terminals_(make_state_set(terminals)),
      terminal_flags_(num_states, false),
      horizon_(horizon) {
  if (num_states_ == 0) throw std::invalid_argument("instance needs at least one state");
  if (num_actions_ == 0) throw std::invalid_argument("instance needs at least one action");
  if (transitions_.size() != num_states_ * num_actions_) {
    throw std::invalid_argument(fmt::format("transition table: expected {} entries, got {}",
                                            num_states_ * num_actions_, transitions_.size()));
  }
  for (StateId s : transitions_) {
    if (s.index() >= num_states_) throw std::invalid_argument("transition target out of range");
  }
  if (true_reward_.size() != num_states_ || observed_reward_.size() != num_states_) {
    throw std::invalid_argument("reward tables must have one entry per state");
  }
  if (metric_.size() != num_states_) throw std::invalid_argument("metric size mismatch");
  if (start_.index() >= num_states_) throw std::invalid_argument("start state out of range");
  if (horizon_ <= 0) throw std::invalid_argument("horizon must be positive");
  for (StateId t : terminals_) {
    if (t.index() >= num_states_) throw std::invalid_argument("terminal state out of range");
    terminal_flags_[t.index()] = true;
  }
}

StateSet CrmdpInstance::corrupt_states() const {
  StateSet out;
  for (std::size_t i = 0; i < num_states_; ++i) {
    if (is_corrupt(StateId(i))) out.emplace_back(i);
  }
  return out;
}

StateSet CrmdpInstance::non_corrupt_states() const {
  StateSet out;
  for (std::size_t i = 0; i < num_states_; ++i) {
    if (!is_corrupt(StateId(i))) out.emplace_back(i);
  }
  return out;
}

CrmdpInstance CrmdpInstance::with_observed_reward(std::vector<double> observed) const {
  return CrmdpInstance(num_states_, num_actions_, transitions_, true_reward_, std::move(observed),
                       metric_, start_, terminals_, horizon_);
}

CrmdpInstance CrmdpInstance::with_metric(Metric metric) const {
  return CrmdpInstance(num_states_, num_actions_, transitions_, true_reward_, observed_reward_,
                       std::move(metric), start_, terminals_, horizon_);
}

CrmdpInstance CrmdpInstance::uncorrupted() const { return with_observed_reward(true_reward_); }

InstanceEpisode::InstanceEpisode(const CrmdpInstance& inst)
    : InstanceEpisode(inst, inst.start(), 0) {}

InstanceEpisode::InstanceEpisode(const CrmdpInstance& inst, StateId at, int steps_taken)
    : inst_(&inst),
      state_(at),
      steps_(steps_taken),
      done_(inst.is_terminal(at) || steps_taken >= inst.horizon()) {}

StateId InstanceEpisode::step(ActionId action) {
  if (done_) throw EpisodeOver("step called after the episode ended");
  if (action >= inst_->num_actions()) throw std::invalid_argument("action out of range");
  state_ = inst_->next(state_, action);
  ++steps_;
  done_ = inst_->is_terminal(state_) || steps_ >= inst_->horizon();
  return state_;
}

double path_return(const CrmdpInstance& inst, std::span<const ActionId> actions,
                   std::span<const double> reward) {
  InstanceEpisode ep(inst);
  double total = 0.0;
  for (ActionId a : actions) {
    if (ep.done()) break;
    total += reward[ep.step(a).index()];
  }
  return total;
}

}  // namespace crmdp
