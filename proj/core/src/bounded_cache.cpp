#include "crmdp/bounded_cache.hpp"

#include <algorithm>
#include <stdexcept>

namespace crmdp {

BoundedCache::BoundedCache(std::size_t capacity, std::uint64_t seed)
    : capacity_(capacity), rng_(seed) {
  if (capacity_ == 0) throw std::invalid_argument("cache capacity must be at least 1");
}

std::optional<StateId> BoundedCache::insert(StateId x, std::span<const StateId> corrupt_set,
                                            const CrmdpInstance& inst,
                                            std::vector<double>& cached_rllb) {
  if (contains(x)) throw std::invalid_argument("state already cached");
  if (std::find(corrupt_set.begin(), corrupt_set.end(), x) != corrupt_set.end()) {
    throw std::invalid_argument("corrupt state cannot join the non-corrupt cache");
  }
  const double cx = inst.observed_reward(x);
  for (StateId y : corrupt_set) {
    double& bound = cached_rllb[y.index()];
    bound = std::max(bound, cx - inst.distance(y, x));
  }

  members_.insert(std::lower_bound(members_.begin(), members_.end(), x), x);
  if (members_.size() <= capacity_) return std::nullopt;

  // Uniform over the older members; the new state always stays.
  std::uniform_int_distribution<std::size_t> pick(0, members_.size() - 2);
  std::size_t k = pick(rng_);
  const auto x_pos = static_cast<std::size_t>(
      std::lower_bound(members_.begin(), members_.end(), x) - members_.begin());
  if (k >= x_pos) ++k;
  const StateId evicted = members_[k];
  members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(k));
  return evicted;
}

void BoundedCache::erase(StateId x) {
  auto it = std::lower_bound(members_.begin(), members_.end(), x);
  if (it != members_.end() && *it == x) members_.erase(it);
}

}  // namespace crmdp
