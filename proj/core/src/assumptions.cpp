#include "crmdp/assumptions.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include <fmt/format.h>

namespace crmdp {

namespace {

struct SupResult {
  double value = 0.0;
  std::optional<StateId> arg;
};

// sup_{y in over} LV_reference(y); the empty sup is taken as 0 since LV >= 0.
SupResult lv_sup(const CrmdpInstance& inst, const LvMeasure& lv, std::span<const StateId> over,
                 std::span<const StateId> reference) {
  SupResult out;
  for (StateId y : over) {
    const double v = lv.evaluate(y, reference, inst);
    if (!out.arg || v > out.value) {
      out.value = v;
      out.arg = y;
    }
  }
  return out;
}

std::optional<SpikinessWitness> first_spikiness_failure(const CrmdpInstance& inst,
                                                        const LvMeasure& lv,
                                                        std::span<const StateId> universe,
                                                        std::span<const StateId> corrupt,
                                                        std::span<const StateId> noncorrupt) {
  const SupResult sup = lv_sup(inst, lv, noncorrupt, universe);
  for (StateId x : corrupt) {
    const double v = lv.evaluate(x, noncorrupt, inst);
    if (!(v > sup.value)) return SpikinessWitness{x, v, sup.value, sup.arg};
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(TrajectoryCondition c) {
  switch (c) {
    case TrajectoryCondition::kHolds:
      return "holds";
    case TrajectoryCondition::kViolated:
      return "violated";
    case TrajectoryCondition::kSampledOk:
      return "sampled-ok";
    case TrajectoryCondition::kNotSampled:
      return "not-sampled";
  }
  return "unknown";
}

bool trajectory_condition_holds(const CrmdpInstance& inst, const LvMeasure& lv,
                                std::span<const StateId> trajectory) {
  const StateSet tau = make_state_set(trajectory);
  StateSet tau_c, tau_n;
  for (StateId x : tau) (inst.is_corrupt(x) ? tau_c : tau_n).push_back(x);
  return !first_spikiness_failure(inst, lv, tau, tau_c, tau_n).has_value();
}

AssumptionReport check_spiky_assumptions(const CrmdpInstance& inst, const LvMeasure& lv,
                                         std::size_t traj_samples, std::uint64_t seed) {
  AssumptionReport report;
  const StateSet all = inst.states();
  const StateSet corrupt = inst.corrupt_states();
  const StateSet noncorrupt = inst.non_corrupt_states();

  report.cond_nonempty = !noncorrupt.empty();

  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const StateId x = all[i], y = all[j];
      const double gap = std::abs(inst.true_reward(x) - inst.true_reward(y));
      if (gap > inst.distance(x, y)) {
        report.smooth_violations.push_back({x, y, gap, inst.distance(x, y)});
      }
    }
  }
  report.cond_smooth = report.smooth_violations.empty();

  report.spiky_violation = first_spikiness_failure(inst, lv, all, corrupt, noncorrupt);
  report.cond_spiky = !report.spiky_violation.has_value();

  if (corrupt.empty()) {
    report.cond_spiky_traj = TrajectoryCondition::kHolds;
  } else if (traj_samples == 0) {
    report.cond_spiky_traj = TrajectoryCondition::kNotSampled;
  } else {
    std::mt19937_64 rng(seed);
    report.cond_spiky_traj = TrajectoryCondition::kSampledOk;
    for (std::size_t k = 0; k < traj_samples; ++k) {
      auto tau = sample_random_trajectory(inst, rng);
      ++report.traj_sample_size;
      if (!trajectory_condition_holds(inst, lv, tau)) {
        report.cond_spiky_traj = TrajectoryCondition::kViolated;
        report.traj_counterexample = std::move(tau);
        break;
      }
    }
  }
  return report;
}

std::string format_report(const AssumptionReport& r, const LvMeasure& lv) {
  std::ostringstream out;
  auto yes = [](bool b) { return b ? "yes" : "NO"; };
  out << fmt::format("measure: {}\n", to_string(lv.kind()));
  out << fmt::format("  1. non-corrupt set nonempty : {}\n", yes(r.cond_nonempty));
  out << fmt::format("  2. true reward Lipschitz    : {}", yes(r.cond_smooth));
  if (!r.cond_smooth) {
    const auto& w = r.smooth_violations.front();
    out << fmt::format("  ({} pairs; e.g. states {} and {}: |dR|={} > d={})",
                       r.smooth_violations.size(), w.x.value, w.y.value, w.reward_gap, w.distance);
  }
  out << "\n";
  out << fmt::format("  3. corruption spiky         : {}", yes(r.cond_spiky));
  if (r.spiky_violation) {
    const auto& w = *r.spiky_violation;
    out << fmt::format("  (state {}: LV_Sn={} <= sup LV_S={})", w.corrupt_state.value,
                       w.lv_against_noncorrupt, w.noncorrupt_sup);
  }
  out << "\n";
  out << fmt::format("  3'. per-trajectory spiky    : {} ({} samples)\n",
                     to_string(r.cond_spiky_traj), r.traj_sample_size);
  return out.str();
}

}  // namespace crmdp
