#pragma once

#include <cstddef>
#include <vector>

#include "crmdp/types.hpp"

namespace crmdp {

/// Dense tabular action values, one row per agent state.
class QTable {
 public:
  QTable() = default;
  QTable(std::size_t rows, std::size_t actions, double init = 0.0)
      : rows_(rows), actions_(actions), values_(rows * actions, init) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t actions() const { return actions_; }

  [[nodiscard]] double operator()(std::size_t row, ActionId a) const {
    return values_[row * actions_ + a];
  }
  double& operator()(std::size_t row, ActionId a) { return values_[row * actions_ + a]; }

  [[nodiscard]] double max_value(std::size_t row) const;
  /// Highest-valued action; ties go to the lowest id.
  [[nodiscard]] ActionId greedy(std::size_t row) const;

  friend bool operator==(const QTable&, const QTable&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t actions_ = 0;
  std::vector<double> values_;
};

struct QTransition {
  std::size_t state = 0;
  ActionId action = 0;
  double reward = 0.0;
  std::size_t next_state = 0;
  bool done = false;
};

/// q(s,a) += lr * (r + [not done] * max_a' q(s',a') - q(s,a))
void q_update(QTable& q, const QTransition& t, double learning_rate);

}  // namespace crmdp
