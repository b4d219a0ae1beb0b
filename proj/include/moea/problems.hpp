#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "moea/core.hpp"

namespace moea {

/// Shape of the Pareto front, used to group problems in reports. Linear and
/// Concave count as regular geometry; Degenerate, Disconnected and Inverted
/// as irregular; RealWorld problems carry no ground truth.
enum class FrontShape { Linear, Concave, Degenerate, Disconnected, Inverted, RealWorld };

std::string to_string(FrontShape s);
bool is_regular(FrontShape s);
bool is_irregular(FrontShape s);

/// Front shape by problem id, without instantiating the problem. Throws
/// std::invalid_argument for unknown ids.
FrontShape front_shape_of(const std::string& id);

/// A multi-knapsack instance: `profit[j][i]` and `weight[j][i]` are the
/// values of item i in knapsack j, capacities are half the total weight per
/// knapsack. Profits and weights are uniform integers in [10, 100].
struct KnapsackInstance {
    int num_knapsacks = 0;
    std::size_t num_items = 0;
    std::vector<std::vector<double>> profit;
    std::vector<std::vector<double>> weight;
    std::vector<double> capacity;
    std::vector<std::size_t> removal_order;   // ascending max profit/weight ratio

    static KnapsackInstance generate(int num_knapsacks, std::size_t num_items, std::uint64_t seed);
};

struct ProblemDefinition {
    std::string name;
    int num_objectives = 0;
    std::size_t num_variables = 0;
    Encoding encoding = Encoding::Real;
    Bounds bounds;                // meaningful for real coding
    FrontShape front_shape = FrontShape::Concave;
    bool constrained = false;

    /// Fills objectives (minimization convention) and the constraint
    /// violation for one decision vector. Pure: no hidden state.
    std::function<void(const DecisionVector&, ObjectiveVector&, double&)> evaluator;

    /// Samples roughly `n` well-spread points of the true Pareto front;
    /// absent for problems without a usable front description.
    std::function<std::vector<ObjectiveVector>(std::size_t)> front_sampler;

    bool has_true_front() const { return static_cast<bool>(front_sampler); }
};

struct ProblemOptions {
    std::uint64_t mokp_seed = 0;      // 0 selects the shipped default instance
    std::string wrp_front_path;       // empty selects the default lookup
};

/// Factory for the benchmark suite: dtlz1..dtlz7, idtlz1, idtlz2, mokp, wrp.
/// Variable counts follow the standard conventions of each family; wrp is
/// fixed at five objectives. Throws std::invalid_argument for unknown names
/// or unsupported objective counts.
ProblemDefinition make_problem(const std::string& id, int num_objectives,
                               const ProblemOptions& options = {});

/// Evaluate one decision vector, counting the evaluation. Throws
/// std::invalid_argument on encoding or dimension mismatch.
Individual evaluate(const ProblemDefinition& problem, const DecisionVector& x,
                    EvaluationCounter& counter);

/// Default location of the water-planning reference front; honours the
/// MOEA_DATA_DIR environment variable, falling back to ./data.
std::string default_wrp_front_path();

/// Load a whitespace-separated objective matrix with `m` columns. Throws
/// std::runtime_error (with the path) when the file is missing or malformed.
std::vector<ObjectiveVector> load_front_file(const std::string& path, int m);

}   // namespace moea
