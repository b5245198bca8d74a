#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crmdp::oracle {

namespace {

double weight_of(const std::vector<double>& weights, StateId y) {
  return weights.empty() ? 1.0 : weights[y.index()];
}

void extend(const CrmdpInstance& inst, Path& current, std::vector<Path>& out) {
  const StateId at = current.states.back();
  const bool over = static_cast<int>(current.actions.size()) >= inst.horizon();
  const bool stop = current.actions.empty() ? false : inst.is_terminal(at);
  if (over || stop) {
    out.push_back(current);
    return;
  }
  for (ActionId a = 0; a < inst.num_actions(); ++a) {
    current.actions.push_back(a);
    current.states.push_back(inst.next(at, a));
    extend(inst, current, out);
    current.actions.pop_back();
    current.states.pop_back();
  }
}

bool near(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

}  // namespace

double nlv(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference,
           const std::vector<double>& weights) {
  double total = 0.0;
  for (StateId y : reference) {
    const double gap = std::abs(inst.observed_reward(x) - inst.observed_reward(y));
    if (gap > inst.distance(x, y)) total += weight_of(weights, y);
  }
  return total;
}

double tlv(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference,
           const std::vector<double>& weights) {
  double total = 0.0;
  for (StateId y : reference) {
    const double gap = std::abs(inst.observed_reward(x) - inst.observed_reward(y));
    total += weight_of(weights, y) * std::max(0.0, gap - inst.distance(x, y));
  }
  return total;
}

double lv(const CrmdpInstance& inst, LvKind kind, StateId x, std::span<const StateId> reference) {
  return kind == LvKind::kNlv ? nlv(inst, x, reference) : tlv(inst, x, reference);
}

std::vector<Path> enumerate_paths(const CrmdpInstance& inst) {
  std::vector<Path> out;
  Path current;
  current.states.push_back(inst.start());
  extend(inst, current, out);
  return out;
}

double path_value(const Path& path, std::span<const double> reward) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.states.size(); ++i) total += reward[path.states[i].index()];
  return total;
}

double best_return(const std::vector<Path>& paths, std::span<const double> reward) {
  double best = -std::numeric_limits<double>::infinity();
  for (const Path& p : paths) best = std::max(best, path_value(p, reward));
  return best;
}

double rllb(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference) {
  double best = -std::numeric_limits<double>::infinity();
  for (StateId y : reference) best = std::max(best, inst.observed_reward(y) - inst.distance(x, y));
  return best;
}

double rulb(const CrmdpInstance& inst, StateId x, std::span<const StateId> reference) {
  double best = std::numeric_limits<double>::infinity();
  for (StateId y : reference) best = std::min(best, inst.observed_reward(y) + inst.distance(x, y));
  return best;
}

double worst_regret_of_optimal(const CrmdpInstance& inst, const std::vector<Path>& paths,
                               std::span<const double> upper) {
  const double r_star = best_return(paths, inst.true_rewards());
  const double u_star = best_return(paths, upper);
  double worst = 0.0;
  for (const Path& p : paths) {
    if (near(path_value(p, upper), u_star)) {
      worst = std::max(worst, r_star - path_value(p, inst.true_rewards()));
    }
  }
  return worst;
}

bool admits_corruption_avoiding_optimum(const CrmdpInstance& inst, const std::vector<Path>& paths) {
  const double r_star = best_return(paths, inst.true_rewards());
  for (const Path& p : paths) {
    const bool clean = std::none_of(p.states.begin() + 1, p.states.end(),
                                    [&](StateId s) { return inst.is_corrupt(s); });
    if (clean && near(path_value(p, inst.true_rewards()), r_star)) return true;
  }
  return false;
}

bool spiky(const CrmdpInstance& inst, LvKind kind) {
  const std::size_t n = inst.num_states();
  StateSet all, clean, dirty;
  for (std::size_t i = 0; i < n; ++i) {
    all.emplace_back(i);
    (inst.is_corrupt(StateId(i)) ? dirty : clean).emplace_back(i);
  }
  if (clean.empty()) return false;
  for (StateId x : all) {
    for (StateId y : all) {
      if (std::abs(inst.true_reward(x) - inst.true_reward(y)) > inst.distance(x, y)) return false;
    }
  }
  double sup = 0.0;
  for (StateId y : clean) sup = std::max(sup, lv(inst, kind, y, all));
  for (StateId x : dirty) {
    if (!(lv(inst, kind, x, clean) > sup)) return false;
  }
  return true;
}

std::vector<double> ema(const std::vector<double>& values, double momentum) {
  std::vector<double> out;
  double e = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    e = i == 0 ? values[i] : momentum * e + (1.0 - momentum) * values[i];
    out.push_back(e);
  }
  return out;
}

}  // namespace crmdp::oracle
