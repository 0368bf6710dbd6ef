#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gecbs/io.hpp"
#include "gecbs/verify.hpp"

namespace gecbs {

/// Command-line style overrides applied on top of a scenario's solver block.
struct SolveOverrides {
    std::optional<std::string> algorithm;
    std::optional<double> w;
    std::optional<double> timeout_ms;
    std::optional<long> max_expansions;
    std::optional<std::uint64_t> seed;
};

/// Applies the overrides, solves, and packages the outcome as a run record.
/// The returned runtime is also stored in result.stats.runtime_ms.
RunDocument solve_scenario(const Scenario& scenario, const SolveOverrides& overrides = {});

/// Shortcuts the run's solution and stores the result in run.shortcut.
/// Returns false when the run holds no solution.
bool shortcut_run(RunDocument& run, int passes);

/// Seed of one benchmark cell: scenario seed plus FNV-1a hash of the algorithm name.
std::uint64_t cell_seed(std::uint64_t scenario_seed, const std::string& algorithm);

struct BenchOptions {
    std::vector<std::string> algorithms;
    std::optional<double> w;
    std::optional<long> max_expansions;
    std::optional<double> timeout_ms;
    int jobs = 0;  // 0: hardware concurrency
    int shortcut_passes = 2;
};

struct RunRecord {
    std::string scenario;
    std::string algo;
    bool success = false;
    SolveStatus status = SolveStatus::Exhausted;
    bool verified = false;
    double runtime_ms = 0.0;
    double shortcut_ms = 0.0;
    long hl_expansions = 0;
    long ll_calls = 0;
    double cost = 0.0;
    double cost_shortcut = 0.0;
    double lb = 0.0;
    std::optional<double> subopt;  // cost / lb
    std::vector<QueueStats> queues;
    std::optional<Solution> solution;
    std::optional<Solution> shortcut_solution;
    std::string error;
};

struct AggregateRow {
    std::string algo;
    int runs = 0;
    int successes = 0;
    double success_pct = 0.0;
    double runtime_mean = 0.0;
    double runtime_std = 0.0;
    double cost_mean = 0.0;
    double cost_std = 0.0;
    double cost_shortcut_mean = 0.0;
    double cost_shortcut_std = 0.0;
};

struct BenchReport {
    std::vector<RunRecord> records;  // scenario-major, algorithms in option order
    std::vector<AggregateRow> aggregate;
};

/// Solves, verifies and shortcuts one cell. Failures are recorded, never thrown.
RunRecord run_cell(const Scenario& scenario, const std::string& algorithm, const BenchOptions& options);
BenchReport run_benchmark(const std::vector<Scenario>& scenarios, const BenchOptions& options);

/// Success rate over all runs; means and sample standard deviations over successes.
std::vector<AggregateRow> aggregate(const std::vector<RunRecord>& records, const std::vector<std::string>& algorithms);

std::string records_to_csv(const std::vector<RunRecord>& records);
std::string aggregate_to_csv(const std::vector<AggregateRow>& rows);
std::string aggregate_to_text(const std::vector<AggregateRow>& rows);

/// Per-timestep configurations and workspace points of every successful run,
/// for external rendering.
json frames_json(const std::vector<Scenario>& scenarios, const std::vector<RunRecord>& records);

/// Every *.json scenario in `dir`, sorted by file name.
std::vector<Scenario> load_scenario_dir(const std::string& dir);

}  // namespace gecbs
