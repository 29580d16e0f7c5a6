#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "castkit/config.hpp"

namespace castkit {

/// Run one forward simulation at (A, B) and write the probe CSV.
void cmd_simulate(const ToolConfig& config, double A, double B,
                  const std::string& out_path);

/// Run one optimizer and write its per-iteration trace CSV into out_dir;
/// returns the result. Unknown algorithm names raise config_error listing
/// the valid ones.
RunResult cmd_optimize(const ToolConfig& config, const std::string& algorithm,
                       std::optional<std::uint64_t> seed, const std::string& out_dir);

/// Run the configured chains, write per-chain dumps, histograms and the
/// pooled summary file into out_dir; returns the summary.
PosteriorSummary cmd_mcmc(const ToolConfig& config, const std::string& out_dir);

/// Run all ten algorithms x replicates with derived seeds, write the
/// parameter-statistics and error-metrics tables plus plot-data CSVs.
void cmd_benchmark(const ToolConfig& config, int replicates, const std::string& out_dir);

/// The experiment a config points at: loaded from disk when a path is set,
/// synthesized (deterministically from its seed) otherwise.
Experiment resolve_experiment(const ToolConfig& config);

/// The objective specification used by optimize/mcmc/benchmark.
FitnessSpec make_fitness_spec(const ToolConfig& config);

/// Seed for one (algorithm, replicate) cell, derived from the top-level seed
/// through keyed substreams so no two cells collide.
std::uint64_t derive_run_seed(std::uint64_t top_seed, int algorithm_index, int replicate);

/// Effective worker count: explicit config value, overridable through the
/// CASTKIT_WORKERS environment variable, defaulting to the hardware count.
int resolve_workers(const ToolConfig& config);

/// Write a RunResult trace: one row per recorded iteration plus a summary
/// footer. Used by cmd_optimize and cmd_benchmark (file `<algorithm>_<seed>.csv`).
void write_run_csv(const RunResult& result, const std::string& path);

} // namespace castkit
