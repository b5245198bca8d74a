#pragma once

#include <cstdint>
#include <optional>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "crmdp/bounded_cache.hpp"
#include "crmdp/grid_env.hpp"
#include "crmdp/instance.hpp"
#include "crmdp/lipschitz.hpp"
#include "crmdp/q_table.hpp"

namespace crmdp {

enum class AgentMode { kBaseline, kCrmdp };
enum class RewardChannel { kObserved, kTrue };

std::string_view to_string(AgentMode m);
std::string_view to_string(RewardChannel c);
AgentMode parse_agent_mode(std::string_view text);
RewardChannel parse_reward_channel(std::string_view text);

struct AgentConfig {
  double learning_rate = 0.1;
  double epsilon_start = 1.0;
  double epsilon_final = 0.05;
  std::size_t epsilon_decay_episodes = 10000;
  std::size_t episodes = 20000;
  std::uint64_t seed = 0;
  AgentMode mode = AgentMode::kCrmdp;
  RewardChannel reward_channel = RewardChannel::kObserved;
  /// Value of every Q entry before the first update. Unset: horizon times the
  /// largest observed reward, an upper bound on any observed return.
  std::optional<double> initial_q;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  /// Linear decay from epsilon_start to epsilon_final, then constant.
  [[nodiscard]] double epsilon_at(std::size_t episode) const;

  friend bool operator==(const AgentConfig&, const AgentConfig&) = default;
};

/// Learner state for one run. Q rows are indexed by (steps taken, state).
struct OnlineState {
  QTable q_table;
  StateSet s_hat_c;
  BoundedCache cache;  // the known non-corrupt states
  /// Lower bound used in place of the observed reward of each state in
  /// s_hat_c; -inf for states never flagged.
  std::vector<double> cached_rllb;

  [[nodiscard]] bool flagged(StateId x) const { return set_contains(s_hat_c, x); }
};

struct EpisodeRow {
  std::size_t episode = 0;
  /// Return of the reward signal the agent trains on (after substitution).
  double observed_return = 0.0;
  double true_return = 0.0;
  double ema_observed = 0.0;
  std::size_t corrupt_identified = 0;
  /// Greedy policy after this episode's updates, evaluated on both channels.
  double greedy_observed_return = 0.0;
  double greedy_true_return = 0.0;

  friend bool operator==(const EpisodeRow&, const EpisodeRow&) = default;
};

struct DetectionEvent {
  std::size_t episode = 0;
  StateId state;

  friend bool operator==(const DetectionEvent&, const DetectionEvent&) = default;
};

struct RunRecord {
  std::string environment;
  AgentConfig config;
  LvKind lv = LvKind::kNlv;
  std::size_t cache_capacity = BoundedCache::kUnbounded;
  std::vector<EpisodeRow> rows;
  std::vector<DetectionEvent> detections;
  StateSet identified_corrupt;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

inline constexpr double kEmaMomentum = 0.9;

/// Called after every episode with the episode index and the learner state.
using EpisodeObserver = std::function<void(std::size_t, const OnlineState&)>;

/// Epsilon-greedy tabular Q-learning. In crmdp mode every episode's
/// trajectory is run through corrupt-state identification; flagged states
/// have their reward replaced by the cached lower Lipschitz bound built from
/// the non-corrupt cache. Throws AllStatesFlagged if identification fails.
RunRecord learn_online(const CrmdpInstance& inst, const AgentConfig& cfg, const LvMeasure& lv,
                       std::size_t cache_capacity = BoundedCache::kUnbounded,
                       const EpisodeObserver& observer = {});

RunRecord learn_online(const GridEnv& env, const AgentConfig& cfg, const LvMeasure& lv,
                       std::size_t cache_capacity = BoundedCache::kUnbounded,
                       const EpisodeObserver& observer = {});

}  // namespace crmdp
