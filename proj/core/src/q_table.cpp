#include "crmdp/q_table.hpp"

namespace crmdp {

double QTable::max_value(std::size_t row) const { return (*this)(row, greedy(row)); }

ActionId QTable::greedy(std::size_t row) const {
  ActionId best = 0;
  for (ActionId a = 1; a < actions_; ++a) {
    if ((*this)(row, a) > (*this)(row, best)) best = a;
  }
  return best;
}

void q_update(QTable& q, const QTransition& t, double learning_rate) {
  const double bootstrap = t.done ? 0.0 : q.max_value(t.next_state);
  double& v = q(t.state, t.action);
  v += learning_rate * (t.reward + bootstrap - v);
}

}  // namespace crmdp
