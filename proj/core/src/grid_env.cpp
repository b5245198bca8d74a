#include "crmdp/grid_env.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

#include "crmdp/assumptions.hpp"
#include "crmdp/errors.hpp"

namespace crmdp {

namespace {

GridState clamp_move(const GridSpec& g, GridState at, GridAction a) {
  GridState to = at;
  switch (a) {
    case GridAction::kUp:
      to.row -= 1;
      break;
    case GridAction::kDown:
      to.row += 1;
      break;
    case GridAction::kLeft:
      to.col -= 1;
      break;
    case GridAction::kRight:
      to.col += 1;
      break;
  }
  if (to.row < 0 || to.col < 0 || to.row >= g.height || to.col >= g.width) return at;
  return to;
}

void validate(GridSpec& g) {
  if (g.width <= 0 || g.height <= 0) throw std::invalid_argument("grid must be non-empty");
  auto inside = [&](GridState c) {
    return c.row >= 0 && c.col >= 0 && c.row < g.height && c.col < g.width;
  };
  if (!inside(g.goal)) throw std::invalid_argument("goal outside grid");
  if (!inside(g.start)) throw std::invalid_argument("start outside grid");
  if (g.goal == g.start) throw std::invalid_argument("goal and start must differ");
  if (g.horizon <= 0) throw std::invalid_argument("horizon must be positive");
  std::sort(g.corrupt_cells.begin(), g.corrupt_cells.end());
  g.corrupt_cells.erase(std::unique(g.corrupt_cells.begin(), g.corrupt_cells.end()),
                        g.corrupt_cells.end());
  for (GridState c : g.corrupt_cells) {
    if (!inside(c)) throw std::invalid_argument("corrupt cell outside grid");
    if (c == g.goal || c == g.start) {
      throw std::invalid_argument("corrupt cells may not be the goal or the start");
    }
  }
}

CrmdpInstance build_instance(const GridSpec& g) {
  const auto n = static_cast<std::size_t>(g.width * g.height);
  auto id = [&](GridState c) { return StateId(static_cast<std::size_t>(c.row * g.width + c.col)); };
  auto cell = [&](std::size_t i) {
    return GridState{static_cast<int>(i) / g.width, static_cast<int>(i) % g.width};
  };

  std::vector<StateId> transitions(n * kGridActions.size());
  std::vector<double> true_reward(n), observed(n);
  for (std::size_t i = 0; i < n; ++i) {
    const GridState c = cell(i);
    for (GridAction a : kGridActions) {
      transitions[i * kGridActions.size() + static_cast<ActionId>(a)] = id(clamp_move(g, c, a));
    }
    true_reward[i] = g.base_reward - chebyshev_distance(c, g.goal);
    observed[i] = true_reward[i];
  }
  for (GridState c : g.corrupt_cells) observed[id(c).index()] = g.corrupt_observed;

  Metric metric = Metric::from_function(
      n, [&](StateId x, StateId y) { return manhattan_distance(cell(x.index()), cell(y.index())); });
  if (g.metric_scale != 1.0) metric = metric.scaled(g.metric_scale);

  return CrmdpInstance(n, kGridActions.size(), std::move(transitions), std::move(true_reward),
                       std::move(observed), std::move(metric), id(g.start), StateSet{id(g.goal)},
                       g.horizon);
}

}  // namespace

std::string_view to_string(GridAction a) {
  switch (a) {
    case GridAction::kUp:
      return "up";
    case GridAction::kDown:
      return "down";
    case GridAction::kLeft:
      return "left";
    case GridAction::kRight:
      return "right";
  }
  return "?";
}

GridEnv::GridEnv(GridSpec spec)
    : spec_((validate(spec), std::move(spec))), instance_(build_instance(spec_)) {
  // Conditions 1-2 do not depend on the LV measure.
  const AssumptionReport nlv_report = check_spiky_assumptions(instance_, LvMeasure::nlv(), 0);
  if (!nlv_report.cond_nonempty) {
    throw SmoothnessViolation("every state is corrupt", instance_.start(), instance_.start());
  }
  if (!nlv_report.cond_smooth) {
    const auto& w = nlv_report.smooth_violations.front();
    throw SmoothnessViolation(
        fmt::format("true reward not Lipschitz: cells {} and {} differ by {} at distance {}",
                    format_cell(cell_of(w.x)), format_cell(cell_of(w.y)), w.reward_gap, w.distance),
        w.x, w.y);
  }
  spiky_nlv_ = nlv_report.cond_spiky;
  spiky_tlv_ = check_spiky_assumptions(instance_, LvMeasure::tlv(), 0).cond_spiky;
}

bool operator==(const GridEnv& a, const GridEnv& b) {
  const GridSpec& x = a.spec_;
  const GridSpec& y = b.spec_;
  return x.width == y.width && x.height == y.height && x.goal == y.goal && x.start == y.start &&
         x.corrupt_cells == y.corrupt_cells && x.base_reward == y.base_reward &&
         x.corrupt_observed == y.corrupt_observed && x.horizon == y.horizon &&
         x.metric_scale == y.metric_scale && a.instance_ == b.instance_;
}

std::string format_cell(GridState c) { return fmt::format("({},{})", c.row, c.col); }

std::string format_cell(const GridEnv& env, StateId s) { return format_cell(env.cell_of(s)); }

GridEnv builtin_corners() {
  GridSpec g;
  g.name = "corners";
  g.corrupt_cells = {{0, 4}, {4, 0}};
  return GridEnv(std::move(g));
}

GridEnv builtin_ontheway() {
  GridSpec g;
  g.name = "ontheway";
  g.corrupt_cells = {{0, 4}, {4, 0}, {1, 2}, {2, 1}};
  return GridEnv(std::move(g));
}

std::optional<GridEnv> builtin_env(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "corners") return builtin_corners();
  if (lower == "ontheway") return builtin_ontheway();
  return std::nullopt;
}

GridEpisode::GridEpisode(const GridEnv& env) : env_(&env), episode_(env.instance()) {}

GridEpisode::GridEpisode(const GridEnv& env, GridState at, int step_index)
    : env_(&env), episode_(env.instance(), env.state_of(at), step_index) {
  if (!env.contains(at)) throw std::invalid_argument("position outside grid");
}

StepOutcome GridEpisode::step(GridAction action) {
  const StateId next = episode_.step(static_cast<ActionId>(action));
  StepOutcome out;
  out.next = env_->cell_of(next);
  out.observed_reward = env_->instance().observed_reward(next);
  out.true_reward = env_->instance().true_reward(next);
  out.done = episode_.done();
  out.step_index = episode_.steps_taken();
  return out;
}

}  // namespace crmdp
