#include "generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace crmdp::testgen {

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Metric l1_metric(const std::vector<GridState>& points) {
  return Metric::from_function(points.size(), [&](StateId x, StateId y) {
    return manhattan_distance(points[x.index()], points[y.index()]);
  });
}

Metric random_l1_metric(Rng& rng, std::size_t n, int extent) {
  std::set<GridState> seen;
  std::vector<GridState> points;
  while (points.size() < n) {
    GridState p{uniform_int(rng, 0, extent - 1), uniform_int(rng, 0, extent - 1)};
    if (seen.insert(p).second) points.push_back(p);
  }
  return l1_metric(points);
}

Metric random_graph_metric(Rng& rng, std::size_t n, int max_weight) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n * n, inf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  auto connect = [&](std::size_t a, std::size_t b) {
    const double w = uniform_int(rng, 1, max_weight);
    d[a * n + b] = std::min(d[a * n + b], w);
    d[b * n + a] = std::min(d[b * n + a], w);
  };
  // random spanning tree, then extra edges
  for (std::size_t i = 1; i < n; ++i) {
    connect(i, static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(i) - 1)));
  }
  const int extra = uniform_int(rng, 0, static_cast<int>(n));
  for (int e = 0; e < extra; ++e) {
    const auto a = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1));
    const auto b = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1));
    if (a != b) connect(a, b);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
      }
    }
  }
  return Metric(n, std::move(d));
}

std::vector<double> random_lipschitz_reward(Rng& rng, const Metric& metric, int max_offset) {
  const std::size_t n = metric.size();
  const int anchors = uniform_int(rng, 1, std::max(1, static_cast<int>(n) / 3));
  std::vector<double> r(n, std::numeric_limits<double>::infinity());
  for (int a = 0; a < anchors; ++a) {
    const StateId p(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)));
    const double offset = uniform_int(rng, 0, max_offset);
    for (std::size_t i = 0; i < n; ++i) r[i] = std::min(r[i], offset + metric(StateId(i), p));
  }
  return r;
}

Corruption inject_spikes(Rng& rng, const std::vector<double>& true_reward, std::size_t count,
                         double min_magnitude, double max_magnitude, StateId protect) {
  Corruption out{true_reward, {}};
  std::vector<StateId> pool;
  for (std::size_t i = 0; i < true_reward.size(); ++i) {
    if (StateId(i) != protect) pool.emplace_back(i);
  }
  std::shuffle(pool.begin(), pool.end(), rng);
  count = std::min(count, pool.size());
  for (std::size_t k = 0; k < count; ++k) {
    const double mag = std::round(uniform_real(rng, min_magnitude, max_magnitude));
    const double spike = std::max(1.0, mag) * (coin(rng, 0.5) ? 1.0 : -1.0);
    out.observed[pool[k].index()] += spike;
    out.injected.push_back(pool[k]);
  }
  std::sort(out.injected.begin(), out.injected.end());
  return out;
}

namespace {

StateSet random_terminals(Rng& rng, std::size_t n, StateId start) {
  StateSet out;
  const int count = uniform_int(rng, 0, 2);
  for (int k = 0; k < count; ++k) {
    const StateId t(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)));
    if (t != start) out.push_back(t);
  }
  return make_state_set(out);
}

}  // namespace

GeneratedInstance random_grid_instance(Rng& rng, const GridGenOptions& opts) {
  int w = 0, h = 0;
  do {
    w = uniform_int(rng, 1, opts.max_side);
    h = uniform_int(rng, 1, opts.max_side);
  } while (w * h < 3);
  const auto n = static_cast<std::size_t>(w * h);
  std::vector<GridState> cells;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) cells.push_back({r, c});
  }
  const Metric metric = l1_metric(cells);

  std::vector<StateId> transitions;
  transitions.reserve(n * 4);
  for (const GridState& c : cells) {
    const GridState moves[4] = {{c.row - 1, c.col}, {c.row + 1, c.col}, {c.row, c.col - 1},
                                {c.row, c.col + 1}};
    for (GridState m : moves) {
      const bool inside = m.row >= 0 && m.col >= 0 && m.row < h && m.col < w;
      const GridState to = inside ? m : c;
      transitions.emplace_back(static_cast<std::size_t>(to.row * w + to.col));
    }
  }

  const StateId start(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)));
  const auto truth = random_lipschitz_reward(rng, metric, 2 * opts.max_side);
  const auto count = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(opts.max_corrupt)));
  Corruption c = inject_spikes(rng, truth, count, opts.min_spike, opts.max_spike, start);
  CrmdpInstance inst(n, 4, std::move(transitions), truth, std::move(c.observed), metric, start,
                     random_terminals(rng, n, start), uniform_int(rng, 1, opts.max_horizon));
  return {std::move(inst), std::move(c.injected)};
}

GeneratedInstance random_metric_instance(Rng& rng, const MetricGenOptions& opts) {
  const auto n = static_cast<std::size_t>(uniform_int(rng, static_cast<int>(opts.min_states),
                                                      static_cast<int>(opts.max_states)));
  const auto actions =
      static_cast<std::size_t>(uniform_int(rng, 1, static_cast<int>(opts.max_actions)));
  const Metric metric = coin(rng, 0.5)
                            ? random_l1_metric(rng, n, std::max(3, static_cast<int>(n)))
                            : random_graph_metric(rng, n, 3);
  std::vector<StateId> transitions;
  transitions.reserve(n * actions);
  for (std::size_t k = 0; k < n * actions; ++k) {
    transitions.emplace_back(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)));
  }
  const StateId start(static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(n) - 1)));
  const auto truth = random_lipschitz_reward(rng, metric, static_cast<int>(n));
  const auto count = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(opts.max_corrupt)));
  Corruption c = inject_spikes(rng, truth, count, opts.min_spike, opts.max_spike, start);
  CrmdpInstance inst(n, actions, std::move(transitions), truth, std::move(c.observed), metric,
                     start, random_terminals(rng, n, start), uniform_int(rng, 1, opts.max_horizon));
  return {std::move(inst), std::move(c.injected)};
}

StateSet random_subset(Rng& rng, const StateSet& from, double p) {
  StateSet out;
  for (StateId x : from) {
    if (coin(rng, p)) out.push_back(x);
  }
  return out;
}

}  // namespace crmdp::testgen
