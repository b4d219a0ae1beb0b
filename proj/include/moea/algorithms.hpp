#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "moea/adaptation.hpp"
#include "moea/core.hpp"
#include "moea/problems.hpp"
#include "moea/refgeom.hpp"

namespace moea {

struct GenerationTrace {
    std::size_t generation = 0;       // 1-based; the initial population is generation 0
    std::uint64_t evaluations = 0;    // cumulative, including the initial population
    std::size_t reference_count = 0;  // after any adaptation this generation
    bool adaptive = false;            // mode at the end of the generation
};

struct UrDecisionRecord {
    std::size_t generation = 0;
    double si = 0.0;
    double threshold = 0.0;
    bool adaptive = false;
};

struct RunResult {
    Population final_population;
    ReferencePointSet final_references;
    std::vector<GenerationTrace> trace;          // one entry per variation generation
    std::optional<UrDecisionRecord> decision;    // present when the one-shot test fired
    bool adaptive_mode = false;                  // mode at termination
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;
    double duration_seconds = 0.0;
    std::uint64_t initial_population_hash = 0;   // over raw decision bytes, for pairing checks
};

/// Called after every environmental selection with the new population and
/// its 1-based generation index; for tests and progress reporting.
using GenerationObserver = std::function<void(const Population&, std::size_t)>;

/// Run config.algorithm on the given problem. The three variants share one
/// loop and one random-stream layout: with adaptation never triggered they
/// draw identical random sequences and produce bit-identical populations.
RunResult run_algorithm(const ProblemDefinition& problem, const RunConfig& config,
                        const GenerationObserver& observer = {});

RunResult run_nsga3(const ProblemDefinition& problem, RunConfig config);
RunResult run_a_nsga3(const ProblemDefinition& problem, RunConfig config);
RunResult run_nsga3_ur(const ProblemDefinition& problem, RunConfig config);

/// FNV-1a over a byte range; exposed for the record schema.
std::uint64_t fnv1a_bytes(const void* data, std::size_t length, std::uint64_t seed = 14695981039346656037ULL);

std::uint64_t hash_decisions(const Population& pop);

}   // namespace moea
