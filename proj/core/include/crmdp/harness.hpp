#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "crmdp/agent.hpp"
#include "crmdp/grid_env.hpp"
#include "crmdp/lipschitz.hpp"

namespace crmdp {

/// First episode whose EMA of observed return reaches optimal_return - tolerance;
/// nullopt when it never does.
std::optional<std::size_t> sample_complexity(const RunRecord& record, double optimal_return,
                                             double tolerance = 1.0);

struct AgentSetup {
  AgentMode mode;
  RewardChannel channel;

  /// e.g. "crmdp-observed"
  [[nodiscard]] std::string slug() const;
  friend bool operator==(const AgentSetup&, const AgentSetup&) = default;
};

/// Rows in reporting order: corrupt baseline, uncorrupt baseline, the
/// uncorrupt sanity run of the crmdp agent (optional), corrupt crmdp.
std::vector<AgentSetup> experiment_setups(bool include_sanity);

/// Optimal return of the reward signal a setup trains on: C, R, or the lower
/// Lipschitz bound computed from the true non-corrupt set.
double optimal_signal_return(const CrmdpInstance& inst, const AgentSetup& setup);

struct ExperimentConfig {
  std::vector<GridEnv> envs;
  std::vector<std::uint64_t> seeds;
  AgentConfig agent;  // mode, channel and seed are overridden per run
  LvMeasure lv = LvMeasure::nlv();
  std::size_t cache_capacity = BoundedCache::kUnbounded;
  bool include_sanity = true;
  double tolerance = 1.0;
  std::size_t tail_episodes = 100;
  std::size_t workers = 0;  // 0: hardware concurrency
};

struct ResultRow {
  std::string environment;
  AgentSetup setup;
  double avg_corrupt_reward = 0.0;
  double avg_true_reward = 0.0;
  double optimal_return = 0.0;
  std::optional<double> sample_complexity;  // mean over seeds that reached it
  std::optional<double> sc_ratio;           // relative to uncorrupt baseline
  std::size_t seeds_run = 0;
  std::size_t seeds_reached = 0;
};

struct RunFailure {
  std::string environment;
  AgentSetup setup;
  std::uint64_t seed;
  std::string message;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<RunRecord> records;  // (env, setup, seed) order
  std::vector<RunFailure> failures;
};

/// Runs every (environment, setup, seed) in a worker pool. Failed runs are
/// recorded in `failures` and left out of the aggregates.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes results.csv, run_<env>_<setup>_<seed>.csv, plot_<env>_<setup>.svg
/// and summary.txt into out_dir (created if missing). Throws
/// std::runtime_error naming the path on I/O failure.
void emit_report(const ExperimentResult& result, const std::filesystem::path& out_dir);

std::string results_csv(const std::vector<ResultRow>& rows);
std::string run_csv(const RunRecord& record);
std::string summary_text(const std::vector<ResultRow>& rows);
std::string run_file_name(const RunRecord& record);

}  // namespace crmdp
