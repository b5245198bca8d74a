#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crmdp/types.hpp"

namespace crmdp {

/// A distance function on a finite state space, stored as a dense |S|x|S|
/// matrix.
class Metric {
 public:
  Metric() = default;
  Metric(std::size_t num_states, std::vector<double> distances);

  static Metric from_function(std::size_t num_states,
                              const std::function<double(StateId, StateId)>& fn);

  [[nodiscard]] double operator()(StateId x, StateId y) const {
    return distances_[x.index() * num_states_ + y.index()];
  }
  [[nodiscard]] std::size_t size() const { return num_states_; }

  /// Every distance multiplied by `factor` (> 0).
  [[nodiscard]] Metric scaled(double factor) const;

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  std::size_t num_states_ = 0;
  std::vector<double> distances_;
};

struct MetricAxiomViolation {
  enum class Axiom { kIdentity, kPositivity, kSymmetry, kTriangle, kNonNegative };
  Axiom axiom;
  StateId x;
  StateId y;
  StateId z;  // only meaningful for kTriangle

  [[nodiscard]] std::string describe() const;
};

/// Exhaustive scan of the metric axioms (O(|S|^3)); returns the first failure.
std::optional<MetricAxiomViolation> find_metric_axiom_violation(const Metric& metric);

struct GridState {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const GridState&, const GridState&) = default;
};

double manhattan_distance(GridState a, GridState b);
double chebyshev_distance(GridState a, GridState b);

}  // namespace crmdp
