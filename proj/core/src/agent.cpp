#include "crmdp/agent.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "crmdp/detect.hpp"

namespace crmdp {

namespace {

constexpr std::uint64_t kCacheSeedSalt = 0x9e3779b97f4a7c15ULL;

struct Step {
  int t;
  StateId from;
  ActionId action;
  StateId to;
  bool done;
};

double initial_q(const CrmdpInstance& inst, const AgentConfig& cfg) {
  if (cfg.initial_q) return *cfg.initial_q;
  const auto c = inst.observed_rewards();
  return inst.horizon() * *std::max_element(c.begin(), c.end());
}

class Learner {
 public:
  Learner(const CrmdpInstance& inst, const AgentConfig& cfg, const LvMeasure& lv,
          std::size_t cache_capacity)
      : truth_(inst),
        view_(cfg.reward_channel == RewardChannel::kTrue ? inst.uncorrupted() : inst),
        cfg_(cfg),
        lv_(lv),
        n_(inst.num_states()),
        state_{QTable(static_cast<std::size_t>(inst.horizon()) * n_, inst.num_actions(), initial_q(inst, cfg)),
               StateSet{}, BoundedCache(cache_capacity, cfg.seed ^ kCacheSeedSalt),
               std::vector<double>(n_, -INFINITY)},
        rng_(cfg.seed) {}

  RunRecord run(const EpisodeObserver& observer) {
    RunRecord record;
    record.config = cfg_;
    record.lv = lv_.kind();
    record.cache_capacity = state_.cache.capacity();
    record.rows.reserve(cfg_.episodes);

    double ema = 0.0;
    for (std::size_t e = 0; e < cfg_.episodes; ++e) {
      const std::vector<Step> steps = rollout(cfg_.epsilon_at(e));
      if (cfg_.mode == AgentMode::kCrmdp) absorb_trajectory(steps, e, record);

      EpisodeRow row;
      row.episode = e;
      for (const Step& s : steps) {
        row.observed_return += signal(s.to);
        row.true_return += truth_.true_reward(s.to);
      }
      for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        q_update(state_.q_table,
                 {row_of(it->t, it->from), it->action, signal(it->to),
                  it->done ? 0 : row_of(it->t + 1, it->to), it->done},
                 cfg_.learning_rate);
      }
      ema = e == 0 ? row.observed_return
                   : kEmaMomentum * ema + (1.0 - kEmaMomentum) * row.observed_return;
      row.ema_observed = ema;
      row.corrupt_identified = state_.s_hat_c.size();
      evaluate_greedy(row);
      record.rows.push_back(row);
      if (observer) observer(e, state_);
    }
    record.identified_corrupt = state_.s_hat_c;
    return record;
  }

 private:
  std::size_t row_of(int t, StateId s) const { return static_cast<std::size_t>(t) * n_ + s.index(); }

  double signal(StateId x) const {
    if (state_.flagged(x)) {
      const double b = state_.cached_rllb[x.index()];
      if (!std::isfinite(b)) throw std::logic_error("flagged state has no cached bound");
      return b;
    }
    return view_.observed_reward(x);
  }

  std::vector<Step> rollout(double epsilon) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<ActionId> any(0, static_cast<ActionId>(view_.num_actions() - 1));
    std::vector<Step> steps;
    InstanceEpisode ep(view_);
    while (!ep.done()) {
      const int t = ep.steps_taken();
      const StateId from = ep.state();
      const ActionId a = coin(rng_) < epsilon ? any(rng_) : state_.q_table.greedy(row_of(t, from));
      const StateId to = ep.step(a);
      steps.push_back({t, from, a, to, ep.done()});
    }
    return steps;
  }

  void absorb_trajectory(const std::vector<Step>& steps, std::size_t episode, RunRecord& record) {
    std::vector<StateId> tau{view_.start()};
    for (const Step& s : steps) tau.push_back(s.to);
    const CorruptionReport found = identify_in_trajectory(tau, lv_, view_);

    StateSet fresh;
    for (StateId x : found.identified_corrupt) {
      if (state_.flagged(x)) continue;
      fresh.push_back(x);
      record.detections.push_back({episode, x});
      state_.cache.erase(x);
      double& bound = state_.cached_rllb[x.index()];
      for (StateId y : state_.cache.members()) {
        bound = std::max(bound, view_.observed_reward(y) - view_.distance(x, y));
      }
    }
    state_.s_hat_c = set_union(state_.s_hat_c, fresh);

    for (StateId y : make_state_set(tau)) {
      if (state_.flagged(y) || state_.cache.contains(y)) continue;
      state_.cache.insert(y, state_.s_hat_c, view_, state_.cached_rllb);
    }
  }

  void evaluate_greedy(EpisodeRow& row) const {
    InstanceEpisode ep(view_);
    while (!ep.done()) {
      const StateId to = ep.step(state_.q_table.greedy(row_of(ep.steps_taken(), ep.state())));
      row.greedy_observed_return += signal(to);
      row.greedy_true_return += truth_.true_reward(to);
    }
  }

  const CrmdpInstance& truth_;
  CrmdpInstance view_;  // rewards as seen through the configured channel
  AgentConfig cfg_;
  LvMeasure lv_;
  std::size_t n_;
  OnlineState state_;
  std::mt19937_64 rng_;
};

}  // namespace

std::string_view to_string(AgentMode m) { return m == AgentMode::kBaseline ? "baseline" : "crmdp"; }

std::string_view to_string(RewardChannel c) {
  return c == RewardChannel::kObserved ? "observed" : "true";
}

AgentMode parse_agent_mode(std::string_view text) {
  if (text == "baseline") return AgentMode::kBaseline;
  if (text == "crmdp") return AgentMode::kCrmdp;
  throw std::invalid_argument("unknown agent '" + std::string(text) + "'");
}

RewardChannel parse_reward_channel(std::string_view text) {
  if (text == "observed" || text == "corrupt") return RewardChannel::kObserved;
  if (text == "true" || text == "uncorrupt") return RewardChannel::kTrue;
  throw std::invalid_argument("unknown reward channel '" + std::string(text) + "'");
}

void AgentConfig::validate() const {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("learning_rate must be in (0, 1]");
  }
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(epsilon_start) || !unit(epsilon_final)) {
    throw std::invalid_argument("epsilon values must be in [0, 1]");
  }
  if (initial_q && !std::isfinite(*initial_q)) throw std::invalid_argument("initial_q must be finite");
  if (epsilon_final > epsilon_start) {
    throw std::invalid_argument("epsilon_final must not exceed epsilon_start");
  }
}

double AgentConfig::epsilon_at(std::size_t episode) const {
  if (epsilon_decay_episodes == 0 || episode >= epsilon_decay_episodes) return epsilon_final;
  const double frac = static_cast<double>(episode) / static_cast<double>(epsilon_decay_episodes);
  return epsilon_start + (epsilon_final - epsilon_start) * frac;
}

RunRecord learn_online(const CrmdpInstance& inst, const AgentConfig& cfg, const LvMeasure& lv,
                       std::size_t cache_capacity, const EpisodeObserver& observer) {
  cfg.validate();
  Learner learner(inst, cfg, lv, cache_capacity);
  return learner.run(observer);
}

RunRecord learn_online(const GridEnv& env, const AgentConfig& cfg, const LvMeasure& lv,
                       std::size_t cache_capacity, const EpisodeObserver& observer) {
  RunRecord record = learn_online(env.instance(), cfg, lv, cache_capacity, observer);
  record.environment = env.name();
  return record;
}

}  // namespace crmdp
