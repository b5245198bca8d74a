#include "crmdp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <system_error>
#include <thread>

#include <fmt/format.h>

#include "crmdp/bounds.hpp"
#include "crmdp/planner.hpp"
#include "crmdp/svg_plot.hpp"

namespace crmdp {

std::optional<std::size_t> sample_complexity(const RunRecord& record, double optimal_return,
                                             double tolerance) {
  const double threshold = optimal_return - tolerance;
  for (const EpisodeRow& row : record.rows) {
    if (row.ema_observed >= threshold) return row.episode;
  }
  return std::nullopt;
}

std::string AgentSetup::slug() const {
  return fmt::format("{}-{}", to_string(mode), to_string(channel));
}

std::vector<AgentSetup> experiment_setups(bool include_sanity) {
  std::vector<AgentSetup> out{{AgentMode::kBaseline, RewardChannel::kObserved},
                              {AgentMode::kBaseline, RewardChannel::kTrue}};
  if (include_sanity) out.push_back({AgentMode::kCrmdp, RewardChannel::kTrue});
  out.push_back({AgentMode::kCrmdp, RewardChannel::kObserved});
  return out;
}

double optimal_signal_return(const CrmdpInstance& inst, const AgentSetup& setup) {
  if (setup.channel == RewardChannel::kTrue) {
    return plan_value_iteration(inst, inst.true_rewards()).optimal_return;
  }
  if (setup.mode == AgentMode::kBaseline) {
    return plan_value_iteration(inst, inst.observed_rewards()).optimal_return;
  }
  const RewardBounds b = compute_bounds(inst, inst.non_corrupt_states());
  return plan_value_iteration(inst, b.lower).optimal_return;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  struct Job {
    std::size_t env;
    AgentSetup setup;
    std::uint64_t seed;
  };
  const auto setups = experiment_setups(config.include_sanity);
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < config.envs.size(); ++e) {
    for (const AgentSetup& s : setups) {
      for (std::uint64_t seed : config.seeds) jobs.push_back({e, s, seed});
    }
  }

  std::vector<std::optional<RunRecord>> records(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      AgentConfig cfg = config.agent;
      cfg.mode = job.setup.mode;
      cfg.reward_channel = job.setup.channel;
      cfg.seed = job.seed;
      try {
        records[j] = learn_online(config.envs[job.env], cfg, config.lv, config.cache_capacity);
      } catch (const std::exception& ex) {
        errors[j] = ex.what();
      }
    }
  };
  std::size_t n_workers = config.workers ? config.workers : std::thread::hardware_concurrency();
  n_workers = std::clamp<std::size_t>(n_workers, 1, std::max<std::size_t>(jobs.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
  }

  ExperimentResult result;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (records[j]) {
      result.records.push_back(std::move(*records[j]));
    } else {
      result.failures.push_back({config.envs[jobs[j].env].name(), jobs[j].setup, jobs[j].seed,
                                 errors[j]});
    }
  }

  for (const GridEnv& env : config.envs) {
    std::optional<double> reference_sc;
    std::vector<ResultRow> env_rows;
    for (const AgentSetup& setup : setups) {
      ResultRow row;
      row.environment = env.name();
      row.setup = setup;
      row.optimal_return = optimal_signal_return(env.instance(), setup);
      double corrupt_sum = 0.0, true_sum = 0.0, sc_sum = 0.0;
      std::size_t tail_count = 0;
      for (const RunRecord& rec : result.records) {
        if (rec.environment != env.name() || rec.config.mode != setup.mode ||
            rec.config.reward_channel != setup.channel) {
          continue;
        }
        ++row.seeds_run;
        const std::size_t tail = std::min(config.tail_episodes, rec.rows.size());
        for (std::size_t i = rec.rows.size() - tail; i < rec.rows.size(); ++i) {
          corrupt_sum += rec.rows[i].greedy_observed_return;
          true_sum += rec.rows[i].greedy_true_return;
          ++tail_count;
        }
        if (auto sc = sample_complexity(rec, row.optimal_return, config.tolerance)) {
          sc_sum += static_cast<double>(*sc);
          ++row.seeds_reached;
        }
      }
      if (tail_count > 0) {
        row.avg_corrupt_reward = corrupt_sum / static_cast<double>(tail_count);
        row.avg_true_reward = true_sum / static_cast<double>(tail_count);
      }
      if (row.seeds_reached > 0) row.sample_complexity = sc_sum / static_cast<double>(row.seeds_reached);
      if (setup == AgentSetup{AgentMode::kBaseline, RewardChannel::kTrue}) {
        reference_sc = row.sample_complexity;
      }
      env_rows.push_back(row);
    }
    for (ResultRow& row : env_rows) {
      if (row.sample_complexity && reference_sc && *reference_sc > 0.0) {
        row.sc_ratio = *row.sample_complexity / *reference_sc;
      }
      if (row.seeds_run > 0) result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string results_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "environment,reward,agent,avg_corrupt_reward,avg_true_reward,sample_complexity,sc_ratio\n";
  for (const ResultRow& r : rows) {
    out += fmt::format("{},{},{},{:.4f},{:.4f},{},{}\n", r.environment, to_string(r.setup.channel),
                       to_string(r.setup.mode), r.avg_corrupt_reward, r.avg_true_reward,
                       r.sample_complexity ? fmt::format("{:.1f}", *r.sample_complexity) : "never",
                       r.sc_ratio ? fmt::format("{:.3f}", *r.sc_ratio) : "");
  }
  return out;
}

std::string run_csv(const RunRecord& record) {
  std::string out =
      "episode,observed_return,true_return,ema_observed,corrupt_identified,"
      "greedy_observed_return,greedy_true_return\n";
  for (const EpisodeRow& r : record.rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.episode, r.observed_return, r.true_return,
                       r.ema_observed, r.corrupt_identified, r.greedy_observed_return,
                       r.greedy_true_return);
  }
  return out;
}

std::string run_file_name(const RunRecord& record) {
  const AgentSetup setup{record.config.mode, record.config.reward_channel};
  return fmt::format("run_{}_{}_{}.csv", record.environment, setup.slug(), record.config.seed);
}

std::string summary_text(const std::vector<ResultRow>& rows) {
  std::string out = fmt::format("{:<10} {:<9} {:<9} {:>10} {:>10} {:>9} {:>10} {:>8}\n", "env",
                                "reward", "agent", "avg_signal", "avg_true", "optimum",
                                "sample_cx", "sc_ratio");
  for (const ResultRow& r : rows) {
    out += fmt::format(
        "{:<10} {:<9} {:<9} {:>10.2f} {:>10.2f} {:>9.2f} {:>10} {:>8}\n", r.environment,
        to_string(r.setup.channel), to_string(r.setup.mode), r.avg_corrupt_reward,
        r.avg_true_reward, r.optimal_return,
        r.sample_complexity ? fmt::format("{:.0f}", *r.sample_complexity) : "never",
        r.sc_ratio ? fmt::format("{:.2f}", *r.sc_ratio) : "-");
  }
  out +=
      "\nNote: sample complexity is the first episode at which the momentum-0.9 moving average\n"
      "of the training-signal return comes within tolerance of its optimum. It is a noisy\n"
      "statistic; compare orderings rather than absolute values.\n";
  return out;
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  out << content;
  if (!out) throw std::runtime_error(fmt::format("failed writing '{}'", path.string()));
}

}  // namespace

void emit_report(const ExperimentResult& result, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::runtime_error(
        fmt::format("cannot create directory '{}': {}", out_dir.string(), ec.message()));
  }
  write_file(out_dir / "results.csv", results_csv(result.rows));
  write_file(out_dir / "summary.txt", summary_text(result.rows));
  for (const RunRecord& rec : result.records) {
    write_file(out_dir / run_file_name(rec), run_csv(rec));
  }

  // One plot per (environment, setup): curves averaged over seeds.
  for (const ResultRow& row : result.rows) {
    std::vector<double> ema, true_ret;
    std::size_t count = 0;
    for (const RunRecord& rec : result.records) {
      if (rec.environment != row.environment || rec.config.mode != row.setup.mode ||
          rec.config.reward_channel != row.setup.channel) {
        continue;
      }
      if (ema.empty()) ema.assign(rec.rows.size(), 0.0), true_ret.assign(rec.rows.size(), 0.0);
      const std::size_t len = std::min(ema.size(), rec.rows.size());
      for (std::size_t i = 0; i < len; ++i) {
        ema[i] += rec.rows[i].ema_observed;
        true_ret[i] += rec.rows[i].true_return;
      }
      ++count;
    }
    if (count == 0) continue;
    for (double& v : ema) v /= static_cast<double>(count);
    for (double& v : true_ret) v /= static_cast<double>(count);

    LinePlot plot;
    plot.title = fmt::format("{} / {} ({} seeds)", row.environment, row.setup.slug(), count);
    plot.x_label = "episode";
    plot.y_label = "return";
    plot.series.push_back(downsample("EMA observed return", "#1f77b4", ema, 400));
    plot.series.push_back(downsample("true return", "#d62728", true_ret, 400));
    plot.reference_y = row.optimal_return;
    write_file(out_dir / fmt::format("plot_{}_{}.svg", row.environment, row.setup.slug()),
               render_svg(plot));
  }
}

}  // namespace crmdp
