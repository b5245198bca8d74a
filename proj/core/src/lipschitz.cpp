#include "crmdp/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace crmdp {

StateMeasure::StateMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("measure weights must be positive and finite");
    }
  }
}

double nlv(StateId x, std::span<const StateId> reference, const CrmdpInstance& inst,
           const StateMeasure& mu) {
  double total = 0.0;
  for (StateId y : reference) {
    if (violates_lipschitz(inst, x, y)) total += mu.weight(y);
  }
  return total;
}

double tlv(StateId x, std::span<const StateId> reference, const CrmdpInstance& inst,
           const StateMeasure& mu) {
  double total = 0.0;
  const double cx = inst.observed_reward(x);
  for (StateId y : reference) {
    const double excess = std::abs(cx - inst.observed_reward(y)) - inst.distance(x, y);
    if (excess > 0.0) total += mu.weight(y) * excess;
  }
  return total;
}

std::string_view to_string(LvKind kind) { return kind == LvKind::kNlv ? "nlv" : "tlv"; }

LvKind parse_lv_kind(std::string_view text) {
  if (text == "nlv" || text == "NLV") return LvKind::kNlv;
  if (text == "tlv" || text == "TLV") return LvKind::kTlv;
  throw std::invalid_argument("unknown LV measure '" + std::string(text) + "'");
}

}  // namespace crmdp
