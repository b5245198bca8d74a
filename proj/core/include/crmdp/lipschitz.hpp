#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "crmdp/instance.hpp"
#include "crmdp/types.hpp"

namespace crmdp {

/// Measure mu on the state space. Empty weights mean the counting measure.
class StateMeasure {
 public:
  StateMeasure() = default;
  explicit StateMeasure(std::vector<double> weights);

  static StateMeasure counting() { return {}; }

  [[nodiscard]] bool is_counting() const { return weights_.empty(); }
  [[nodiscard]] double weight(StateId x) const {
    return weights_.empty() ? 1.0 : weights_[x.index()];
  }

 private:
  std::vector<double> weights_;
};

/// True when x and y break the Lipschitz condition on the observed reward:
/// |C(x) - C(y)| > d(x, y).
inline bool violates_lipschitz(const CrmdpInstance& inst, StateId x, StateId y) {
  const double gap = inst.observed_reward(x) - inst.observed_reward(y);
  return (gap < 0 ? -gap : gap) > inst.distance(x, y);
}

/// Number of Lipschitz violations of x against the reference set A.
double nlv(StateId x, std::span<const StateId> reference, const CrmdpInstance& inst,
           const StateMeasure& mu = StateMeasure::counting());

/// Total Lipschitz violation of x against A: sum of mu(y) * max(0, |C(x)-C(y)| - d(x,y)).
double tlv(StateId x, std::span<const StateId> reference, const CrmdpInstance& inst,
           const StateMeasure& mu = StateMeasure::counting());

enum class LvKind { kNlv, kTlv };

std::string_view to_string(LvKind kind);
/// Accepts "nlv" / "tlv"; throws std::invalid_argument otherwise.
LvKind parse_lv_kind(std::string_view text);

class LvMeasure {
 public:
  explicit LvMeasure(LvKind kind, StateMeasure mu = StateMeasure::counting())
      : kind_(kind), mu_(std::move(mu)) {}

  static LvMeasure nlv() { return LvMeasure(LvKind::kNlv); }
  static LvMeasure tlv() { return LvMeasure(LvKind::kTlv); }

  [[nodiscard]] LvKind kind() const { return kind_; }
  [[nodiscard]] const StateMeasure& measure() const { return mu_; }

  /// LV_A(x)
  [[nodiscard]] double evaluate(StateId x, std::span<const StateId> reference,
                                const CrmdpInstance& inst) const {
    return kind_ == LvKind::kNlv ? crmdp::nlv(x, reference, inst, mu_)
                                 : crmdp::tlv(x, reference, inst, mu_);
  }

 private:
  LvKind kind_;
  StateMeasure mu_;
};

}  // namespace crmdp
