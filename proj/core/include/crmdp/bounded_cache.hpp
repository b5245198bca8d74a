#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "crmdp/instance.hpp"

namespace crmdp {

/// Memory-bounded set of known non-corrupt states. Every insert first folds
/// the new state's bound contribution into the cached lower bounds of the
/// known corrupt states; once over capacity, a random older member is dropped.
class BoundedCache {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  BoundedCache(std::size_t capacity, std::uint64_t seed);

  [[nodiscard]] std::size_t capacity() const { return capacity_; }
  [[nodiscard]] std::size_t size() const { return members_.size(); }
  [[nodiscard]] const StateSet& members() const { return members_; }
  [[nodiscard]] bool contains(StateId x) const { return set_contains(members_, x); }

  /// cached_rllb[y] = max(cached_rllb[y], C(x) - d(y, x)) for each y in
  /// corrupt_set, then x joins. Returns the evicted member, if any.
  /// Throws std::invalid_argument if x is already a member or in corrupt_set.
  std::optional<StateId> insert(StateId x, std::span<const StateId> corrupt_set,
                                const CrmdpInstance& inst, std::vector<double>& cached_rllb);

  void erase(StateId x);

 private:
  std::size_t capacity_;
  StateSet members_;
  std::mt19937_64 rng_;
};

}  // namespace crmdp
