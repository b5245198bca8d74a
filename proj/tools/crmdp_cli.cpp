// crmdp: command-line front end for corrupt-state detection, reward bounds,
// and the gridworld training battery.
//
// Exit codes: 0 success, 1 usage error, 2 assumption violation, 3 runtime failure.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "crmdp/agent.hpp"
#include "crmdp/assumptions.hpp"
#include "crmdp/bounds.hpp"
#include "crmdp/detect.hpp"
#include "crmdp/env_format.hpp"
#include "crmdp/errors.hpp"
#include "crmdp/harness.hpp"
#include "crmdp/planner.hpp"

using namespace crmdp;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kAssumption = 2, kRuntime = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Fn>
std::string grid_table(const GridEnv& env, Fn&& cell_text) {
  std::string out;
  for (int r = 0; r < env.height(); ++r) {
    for (int c = 0; c < env.width(); ++c) out += fmt::format("{:>8}", cell_text(GridState{r, c}));
    out += '\n';
  }
  return out;
}

std::string format_states(const GridEnv& env, const StateSet& states) {
  std::string out = "{";
  for (std::size_t i = 0; i < states.size(); ++i) {
    out += (i ? ", " : "") + format_cell(env, states[i]);
  }
  return out + "}";
}

GridEnv load_or_usage(const std::string& name) {
  if (!builtin_env(name) && !std::filesystem::exists(name)) {
    throw UsageError(fmt::format("unknown environment '{}' (builtins: corners, ontheway)", name));
  }
  try {
    return load_env(name);
  } catch (const ParseError& e) {
    throw UsageError(fmt::format("{}: {}", name, e.what()));
  } catch (const std::invalid_argument& e) {
    throw UsageError(fmt::format("{}: {}", name, e.what()));
  }
}

void warn_if_not_spiky(const GridEnv& env) {
  for (LvKind k : {LvKind::kNlv, LvKind::kTlv}) {
    if (!env.spiky_under(k)) {
      std::cerr << fmt::format("warning: {} corruption is not spiky under {}\n", env.name(),
                               to_string(k));
    }
  }
}

int cmd_detect(const std::string& env_name, const std::string& lv_name) {
  const GridEnv env = load_or_usage(env_name);
  warn_if_not_spiky(env);
  const LvMeasure lv(parse_lv_kind(lv_name));
  const CorruptionReport report = identify_corrupt_states(env.instance().states(), lv, env.instance());

  std::vector<double> score(env.instance().num_states(), 0.0);
  for (std::size_t i = 0; i < report.scan_order.size(); ++i) {
    score[report.scan_order[i].index()] = report.scores[i];
  }
  std::cout << fmt::format("environment: {}   measure: {}\n", env.name(), to_string(lv.kind()));
  std::cout << "LV over all states:\n"
            << grid_table(env, [&](GridState c) {
                 const StateId s = env.state_of(c);
                 return fmt::format("{}{}", score[s.index()], report.flagged(s) ? "*" : "");
               });
  std::cout << fmt::format("identified corrupt: {}\n",
                           format_states(env, report.identified_corrupt));
  return kOk;
}

int cmd_check(const std::string& env_name, const std::string& lv_name, std::size_t samples,
              std::uint64_t seed) {
  const GridEnv env = load_or_usage(env_name);
  std::vector<LvKind> kinds;
  if (lv_name == "both") {
    kinds = {LvKind::kNlv, LvKind::kTlv};
  } else {
    kinds = {parse_lv_kind(lv_name)};
  }
  bool ok = true;
  std::cout << fmt::format("environment: {}\n", env.name());
  for (LvKind k : kinds) {
    const LvMeasure lv(k);
    const AssumptionReport r = check_spiky_assumptions(env.instance(), lv, samples, seed);
    std::cout << format_report(r, lv);
    if (r.cond_spiky_traj == TrajectoryCondition::kViolated) {
      std::vector<StateId> tau = r.traj_counterexample;
      std::string path;
      for (StateId s : tau) path += format_cell(env, s) + " ";
      std::cout << "     counterexample trajectory: " << path << "\n";
    }
    ok = ok && r.spiky();
  }
  return ok ? kOk : kAssumption;
}

int cmd_bounds(const std::string& env_name, const std::string& lv_name) {
  const GridEnv env = load_or_usage(env_name);
  const CrmdpInstance& inst = env.instance();
  const LvMeasure lv(parse_lv_kind(lv_name));
  const CorruptionReport found = identify_corrupt_states(inst.states(), lv, inst);
  const StateSet reference = set_difference(inst.states(), found.identified_corrupt);
  const RewardBounds b = compute_bounds(inst, reference);

  std::cout << fmt::format("environment: {}   reference: detected non-corrupt set ({} states)\n",
                           env.name(), reference.size());
  std::cout << "rllb:\n" << grid_table(env, [&](GridState c) {
    return fmt::format("{}", b.lower_at(env.state_of(c)));
  });
  std::cout << "rulb:\n" << grid_table(env, [&](GridState c) {
    return fmt::format("{}", b.upper_at(env.state_of(c)));
  });
  for (StateId x : found.identified_corrupt) {
    std::cout << fmt::format("  {}: rllb {} via {}, rulb {} via {}\n", format_cell(env, x),
                             b.lower_at(x), format_cell(env, b.lower_bounding_state[x.index()]),
                             b.upper_at(x), format_cell(env, b.upper_bounding_state[x.index()]));
  }
  const RegretBound regret = regret_upper_bound(inst, b);
  std::cout << fmt::format("regret upper bound (rulb-optimal policies): {}\n", regret.value);

  const PolicyValue by_lower = plan_value_iteration(inst, b.lower);
  const PolicyValue by_true = plan_value_iteration(inst, inst.true_rewards());
  std::cout << fmt::format("true return of rllb-optimal policy: {} (true optimum {})\n",
                           policy_return(inst, by_lower, inst.true_rewards()),
                           by_true.optimal_return);
  return kOk;
}

struct TrainOptions {
  std::string env;
  std::string agent = "crmdp";
  std::string reward = "observed";
  std::string lv = "nlv";
  std::size_t episodes = 20000;
  std::uint64_t seed = 0;
  std::string out = "out";
  std::size_t cache_capacity = BoundedCache::kUnbounded;
  double learning_rate = 0.1;
  std::optional<double> initial_q;
  double tolerance = 1.0;
};

AgentConfig agent_config(std::size_t episodes, double lr, std::optional<double> initial_q) {
  AgentConfig cfg;
  cfg.initial_q = initial_q;
  cfg.episodes = episodes;
  cfg.epsilon_decay_episodes = episodes / 2;
  cfg.learning_rate = lr;
  return cfg;
}

int cmd_train(const TrainOptions& o) {
  const GridEnv env = load_or_usage(o.env);
  warn_if_not_spiky(env);
  AgentConfig cfg = agent_config(o.episodes, o.learning_rate, o.initial_q);
  cfg.seed = o.seed;
  cfg.mode = parse_agent_mode(o.agent);
  cfg.reward_channel = parse_reward_channel(o.reward);
  const LvMeasure lv(parse_lv_kind(o.lv));

  const RunRecord rec = learn_online(env, cfg, lv, o.cache_capacity);
  const double optimum = optimal_signal_return(env.instance(), {cfg.mode, cfg.reward_channel});
  const auto sc = sample_complexity(rec, optimum, o.tolerance);

  std::filesystem::create_directories(o.out);
  const auto path = std::filesystem::path(o.out) / run_file_name(rec);
  {
    std::ofstream f(path);
    if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    f << run_csv(rec);
  }
  const EpisodeRow& last = rec.rows.back();
  std::cout << fmt::format("{} {}-{} seed {}: {} episodes\n", env.name(), to_string(cfg.mode),
                           to_string(cfg.reward_channel), cfg.seed, rec.rows.size());
  std::cout << fmt::format("  greedy return: signal {} / true {}\n", last.greedy_observed_return,
                           last.greedy_true_return);
  std::cout << fmt::format("  identified corrupt: {}\n", format_states(env, rec.identified_corrupt));
  std::cout << fmt::format("  sample complexity (optimum {}): {}\n", optimum,
                           sc ? std::to_string(*sc) : "never");
  std::cout << fmt::format("  wrote {}\n", path.string());
  return kOk;
}

struct BenchOptions {
  std::vector<std::string> envs;
  std::string seeds = "1,2,3,4,5";
  std::string lv = "nlv";
  std::string out = "out";
  std::size_t episodes = 20000;
  std::size_t workers = 0;
  std::size_t cache_capacity = BoundedCache::kUnbounded;
  double learning_rate = 0.1;
  std::optional<double> initial_q;
  bool no_sanity = false;
};

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!item.empty()) {
      try {
        std::size_t used = 0;
        seeds.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError(fmt::format("invalid seed '{}'", item));
      }
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return seeds;
}

int cmd_bench(const BenchOptions& o) {
  ExperimentConfig cfg;
  for (const auto& e : o.envs) cfg.envs.push_back(load_or_usage(e));
  cfg.seeds = parse_seeds(o.seeds);
  cfg.agent = agent_config(o.episodes, o.learning_rate, o.initial_q);
  cfg.lv = LvMeasure(parse_lv_kind(o.lv));
  cfg.cache_capacity = o.cache_capacity;
  cfg.include_sanity = !o.no_sanity;
  cfg.workers = o.workers;

  const ExperimentResult result = run_experiment(cfg);
  emit_report(result, o.out);
  std::cout << summary_text(result.rows);
  for (const RunFailure& f : result.failures) {
    std::cerr << fmt::format("run failed: {} {} seed {}: {}\n", f.environment, f.setup.slug(),
                             f.seed, f.message);
  }
  std::cout << fmt::format("wrote report to {}\n", o.out);
  return result.failures.empty() ? kOk : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spiky corrupt-reward MDP toolkit"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);

  std::string env, lv = "nlv";
  auto* detect = app.add_subcommand("detect", "identify corrupt states");
  detect->add_option("--env", env, "builtin name or environment file")->required();
  detect->add_option("--lv", lv, "violation measure")->check(CLI::IsMember({"nlv", "tlv"}));

  std::string check_lv = "both";
  std::size_t samples = 1000;
  std::uint64_t check_seed = 0;
  auto* check = app.add_subcommand("check", "evaluate the spikiness assumptions");
  check->add_option("--env", env, "builtin name or environment file")->required();
  check->add_option("--lv", check_lv, "violation measure")
      ->check(CLI::IsMember({"nlv", "tlv", "both"}));
  check->add_option("--samples", samples, "random trajectories for the per-trajectory condition");
  check->add_option("--seed", check_seed, "trajectory sampling seed");

  TrainOptions train_opts;
  auto* train = app.add_subcommand("train", "train one agent");
  train->add_option("--env", train_opts.env, "builtin name or environment file")->required();
  train->add_option("--agent", train_opts.agent)->check(CLI::IsMember({"baseline", "crmdp"}));
  train->add_option("--reward", train_opts.reward)->check(CLI::IsMember({"observed", "true"}));
  train->add_option("--episodes", train_opts.episodes);
  train->add_option("--seed", train_opts.seed);
  train->add_option("--out", train_opts.out);
  train->add_option("--lv", train_opts.lv)->check(CLI::IsMember({"nlv", "tlv"}));
  train->add_option("--cache-capacity", train_opts.cache_capacity)->check(CLI::PositiveNumber)->default_str("unbounded");
  train->add_option("--lr", train_opts.learning_rate);
  train->add_option("--initial-q", train_opts.initial_q, "initial value of every Q entry (default: horizon x max observed reward)");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "run the full agent battery over seeds");
  bench->add_option("--env", bench_opts.envs, "builtin name or environment file (repeatable)")
      ->required();
  bench->add_option("--seeds", bench_opts.seeds, "comma-separated seeds");
  bench->add_option("--out", bench_opts.out);
  bench->add_option("--episodes", bench_opts.episodes);
  bench->add_option("--lv", bench_opts.lv)->check(CLI::IsMember({"nlv", "tlv"}));
  bench->add_option("--workers", bench_opts.workers);
  bench->add_option("--cache-capacity", bench_opts.cache_capacity)->check(CLI::PositiveNumber)->default_str("unbounded");
  bench->add_option("--lr", bench_opts.learning_rate);
  bench->add_option("--initial-q", bench_opts.initial_q, "initial value of every Q entry (default: horizon x max observed reward)");
  bench->add_flag("--no-sanity", bench_opts.no_sanity, "skip the crmdp/true sanity run");

  auto* bounds = app.add_subcommand("bounds", "Lipschitz reward bounds and regret bound");
  bounds->add_option("--env", env, "builtin name or environment file")->required();
  bounds->add_option("--lv", lv, "violation measure")->check(CLI::IsMember({"nlv", "tlv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*detect) return cmd_detect(env, lv);
    if (*check) return cmd_check(env, check_lv, samples, check_seed);
    if (*train) return cmd_train(train_opts);
    if (*bench) return cmd_bench(bench_opts);
    if (*bounds) return cmd_bounds(env, lv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SmoothnessViolation& e) {
    std::cerr << "assumption violated: " << e.what() << "\n";
    return kAssumption;
  } catch (const AllStatesFlagged& e) {
    std::cerr << "assumption violated: " << e.what() << "\n";
    return kAssumption;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
