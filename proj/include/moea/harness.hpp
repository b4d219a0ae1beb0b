#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "moea/core.hpp"
#include "moea/indicators.hpp"

namespace moea {

/// One experiment: the cross product of problems, objective counts and
/// algorithms, replicated with paired seeds (replication r runs every
/// algorithm with seed base_seed + r).
struct ExperimentSpec {
    std::vector<std::string> problems;
    std::vector<int> objectives;
    std::vector<AlgorithmId> algorithms;
    int replications = 30;
    std::uint64_t budget = 60000;
    std::uint64_t base_seed = 1;
    std::string out_dir = "results";
    SiScaling si_scaling = SiScaling::Literal;
    std::size_t population_override = 0;   // 0 applies the objective-count rule
    unsigned threads = 0;                  // 0 means hardware concurrency

    /// Population size rule: 120 up to four objectives, 105 at five.
    static std::size_t default_population(int m) { return m >= 5 ? 105 : 120; }
};

/// Parse the key=value spec format (# comments, comma-separated lists).
/// Recognized keys: problems, objectives, algorithms, reps, budget, seed,
/// out, si_scaling, population, threads. Throws std::invalid_argument
/// naming the offending key or value.
ExperimentSpec load_spec(const std::string& path);
ExperimentSpec parse_spec(const std::string& text);

/// Everything recorded about one run; serialized as one JSON file per
/// (problem, m, algorithm, seed).
struct ResultRecord {
    std::string problem;
    int m = 0;
    std::string algorithm;
    std::uint64_t seed = 0;
    std::optional<double> igd_value;       // absent without a usable true front
    std::optional<double> hv_value;
    std::optional<double> si;              // present when the one-shot test fired
    std::optional<double> threshold;
    std::optional<std::uint64_t> decision_generation;
    std::string mode = "static";
    std::string si_scaling = "literal";
    double duration_seconds = 0.0;
    std::uint64_t evaluations = 0;
    std::string init_hash;                 // hex digest of the initial decisions
    std::vector<ObjectiveVector> objectives;   // final population, minimization convention
};

std::string record_filename(const std::string& problem, int m, const std::string& algorithm,
                            std::uint64_t seed);

/// Runs every (problem, m, algorithm, seed) cell of the spec, skipping cells
/// whose record file already parses (resume). Writes one JSON record per run
/// plus a streaming CSV of per-run rows, then fills knapsack hypervolumes
/// from the union of all runs' non-dominated sets. The callback, when given,
/// fires once per record with fresh=false for resumed ones.
using RunCallback = std::function<void(const ResultRecord&, bool fresh)>;
std::vector<ResultRecord> run_experiment(const ExperimentSpec& spec, const RunCallback& cb = {});

std::vector<ResultRecord> load_records(const std::string& dir);

/// Aggregated view of one (problem, m, algorithm, metric) cell.
struct CellStats {
    std::string problem;
    int m = 0;
    std::string algorithm;
    std::string metric;   // "igd" | "hv"
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;
    std::optional<Mark> mark;   // vs the conditional-adaptation runs, when present
    bool best_in_cell = false;
};

std::vector<CellStats> aggregate(const std::vector<ResultRecord>& records, const std::string& metric);

/// Render the mean (std) table with significance marks and the +/-/~ tally
/// footer. `metric` is "igd", "hv" or "both".
std::string summarize_text(const std::vector<ResultRecord>& records, const std::string& metric);

/// Write the aggregate CSV (problem, m, algorithm, metric, mean, std, mark).
void write_summary_csv(const std::vector<ResultRecord>& records, const std::string& metric,
                       const std::string& path);

/// Per-category report of how often the final adaptation mode matched the
/// front geometry (static for regular fronts, adaptive for irregular ones).
std::string classification_report(const std::vector<ResultRecord>& records);

/// The replication whose primary metric sits at the (lower) median of its
/// cell; IGD when available, hypervolume otherwise.
const ResultRecord* pick_median_record(const std::vector<const ResultRecord*>& cell);

/// Write the non-dominated rows of a record's final population, maximization
/// values un-negated. Returns the number of rows written.
std::size_t dump_front(const ResultRecord& record, const std::string& path);

/// Scientific notation with a fixed number of significant digits and a
/// compact exponent ("1.7843e-2").
std::string format_sci(double value, int significant_digits);

}   // namespace moea
