#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace crmdp {

/// Dense index of a state in [0, |S|). Ordering is the tie-break order used
/// throughout the library.
struct StateId {
  std::uint32_t value = 0;

  constexpr StateId() = default;
  constexpr explicit StateId(std::uint32_t v) : value(v) {}
  constexpr explicit StateId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr explicit StateId(int v) : value(static_cast<std::uint32_t>(v)) {}

  [[nodiscard]] constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(StateId, StateId) = default;
};

using ActionId = std::uint32_t;

/// Sorted, duplicate-free list of states.
using StateSet = std::vector<StateId>;

inline StateSet make_state_set(std::span<const StateId> states) {
  StateSet out(states.begin(), states.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool set_contains(const StateSet& set, StateId x) {
  return std::binary_search(set.begin(), set.end(), x);
}

inline StateSet set_union(const StateSet& a, const StateSet& b) {
  StateSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline StateSet set_difference(const StateSet& a, const StateSet& b) {
  StateSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline StateSet all_states(std::size_t n) {
  StateSet out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(i);
  return out;
}

}  // namespace crmdp

template <>
struct std::hash<crmdp::StateId> {
  std::size_t operator()(crmdp::StateId s) const noexcept { return s.value; }
};
