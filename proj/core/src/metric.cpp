#include "crmdp/metric.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace crmdp {

Metric::Metric(std::size_t num_states, std::vector<double> distances)
    : num_states_(num_states), distances_(std::move(distances)) {
  if (distances_.size() != num_states_ * num_states_) {
    throw std::invalid_argument(fmt::format("metric: expected {} entries, got {}",
                                            num_states_ * num_states_, distances_.size()));
  }
}

Metric Metric::from_function(std::size_t num_states,
                             const std::function<double(StateId, StateId)>& fn) {
  std::vector<double> d(num_states * num_states);
  for (std::size_t i = 0; i < num_states; ++i) {
    for (std::size_t j = 0; j < num_states; ++j) {
      d[i * num_states + j] = fn(StateId(i), StateId(j));
    }
  }
  return Metric(num_states, std::move(d));
}

Metric Metric::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("metric scale must be positive");
  Metric out = *this;
  for (double& v : out.distances_) v *= factor;
  return out;
}

std::string MetricAxiomViolation::describe() const {
  switch (axiom) {
    case Axiom::kIdentity:
      return fmt::format("d({0},{0}) != 0", x.value);
    case Axiom::kPositivity:
      return fmt::format("d({},{}) = 0 for distinct states", x.value, y.value);
    case Axiom::kSymmetry:
      return fmt::format("d({0},{1}) != d({1},{0})", x.value, y.value);
    case Axiom::kNonNegative:
      return fmt::format("d({},{}) < 0", x.value, y.value);
    case Axiom::kTriangle:
      return fmt::format("d({0},{2}) > d({0},{1}) + d({1},{2})", x.value, y.value, z.value);
  }
  return "unknown";
}

std::optional<MetricAxiomViolation> find_metric_axiom_violation(const Metric& metric) {
  using Axiom = MetricAxiomViolation::Axiom;
  const std::size_t n = metric.size();
  for (std::size_t i = 0; i < n; ++i) {
    const StateId x(i);
    if (metric(x, x) != 0.0) return MetricAxiomViolation{Axiom::kIdentity, x, x, x};
    for (std::size_t j = 0; j < n; ++j) {
      const StateId y(j);
      if (metric(x, y) < 0.0 || std::isnan(metric(x, y))) {
        return MetricAxiomViolation{Axiom::kNonNegative, x, y, y};
      }
      if (i != j && metric(x, y) == 0.0) return MetricAxiomViolation{Axiom::kPositivity, x, y, y};
      if (metric(x, y) != metric(y, x)) return MetricAxiomViolation{Axiom::kSymmetry, x, y, y};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const StateId x(i), y(j), z(k);
        if (metric(x, z) > metric(x, y) + metric(y, z)) {
          return MetricAxiomViolation{Axiom::kTriangle, x, y, z};
        }
      }
    }
  }
  return std::nullopt;
}

double manhattan_distance(GridState a, GridState b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

double chebyshev_distance(GridState a, GridState b) {
  return std::max(std::abs(a.row - b.row), std::abs(a.col - b.col));
}

}  // namespace crmdp
