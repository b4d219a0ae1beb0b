#include "moea/algorithms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "moea/dominance.hpp"
#include "moea/variation.hpp"

namespace moea {

namespace {

DecisionVector random_decision(const ProblemDefinition& problem, RngStream& rng) {
    DecisionVector x;
    x.encoding = problem.encoding;
    if (problem.encoding == Encoding::Real) {
        x.reals.resize(problem.num_variables);
        for (std::size_t i = 0; i < problem.num_variables; ++i)
            x.reals[i] = rng.uniform(problem.bounds.lower[i], problem.bounds.upper[i]);
    } else {
        x.bits.resize(problem.num_variables);
        for (auto& b : x.bits) b = rng.chance(0.5) ? 1 : 0;
    }
    return x;
}

std::vector<Individual> make_offspring(const Population& pop, const MatingPools& pools,
                                       const ProblemDefinition& problem, const RunConfig& cfg,
                                       RunRngs& rngs, EvaluationCounter& counter) {
    const std::size_t n = pop.capacity;
    const double p_mut = cfg.operators.p_mutation > 0.0
                             ? cfg.operators.p_mutation
                             : 1.0 / static_cast<double>(problem.num_variables);

    std::vector<Individual> children;
    children.reserve(n + 1);
    for (std::size_t pair = 0; children.size() < n; ++pair) {
        const Individual& p1 = pop.members[pools.first[pair]];
        const Individual& p2 = pop.members[pools.second[pair]];

        DecisionVector c1, c2;
        if (problem.encoding == Encoding::Real) {
            std::tie(c1, c2) = sbx_crossover(p1.decision, p2.decision, cfg.operators,
                                             problem.bounds, rngs.crossover);
            c1 = polynomial_mutation(c1, p_mut, cfg.operators.eta_mutation, problem.bounds,
                                     rngs.mutation);
            c2 = polynomial_mutation(c2, p_mut, cfg.operators.eta_mutation, problem.bounds,
                                     rngs.mutation);
        } else {
            if (rngs.crossover.chance(cfg.operators.p_crossover))
                std::tie(c1, c2) = one_point_crossover(p1.decision, p2.decision, rngs.crossover);
            else
                std::tie(c1, c2) = std::pair{p1.decision, p2.decision};
            c1 = bitwise_mutation(c1, p_mut, rngs.mutation);
            c2 = bitwise_mutation(c2, p_mut, rngs.mutation);
        }

        children.push_back(evaluate(problem, c1, counter));
        if (children.size() < n) children.push_back(evaluate(problem, c2, counter));
    }
    return children;
}

// Environmental selection of NSGA-III: fill by fronts, normalize the
// candidate set, then admit from the split front by niche preservation.
std::vector<Individual> environmental_selection(std::vector<Individual>& merged,
                                                const ProblemDefinition& problem,
                                                std::size_t n, NormalizationState& norm,
                                                ReferencePointSet& refs, RngStream& rng) {
    const FrontPartition fronts = fast_nondominated_sort(merged, problem.constrained);

    std::vector<std::size_t> candidates;   // indices into merged, front by front
    std::size_t last_begin = 0;            // first position of the split front
    for (const auto& front : fronts) {
        if (candidates.size() >= n) break;
        last_begin = candidates.size();
        candidates.insert(candidates.end(), front.begin(), front.end());
    }

    std::vector<ObjectiveVector> objectives;
    objectives.reserve(candidates.size());
    for (std::size_t idx : candidates) objectives.push_back(merged[idx].objectives);
    update_normalization(norm, objectives);

    std::vector<std::size_t> chosen;   // positions within `candidates`
    if (candidates.size() == n) {
        chosen.resize(n);
        for (std::size_t i = 0; i < n; ++i) chosen[i] = i;
    } else {
        const auto normalized = normalize_all(norm, objectives);
        const Association assoc = associate(normalized, refs);

        refs.reset_niche_counts();
        for (std::size_t pos = 0; pos < last_begin; ++pos)
            ++refs.points[assoc.ref_index[pos]].niche_count;

        std::vector<std::size_t> last_front(candidates.size() - last_begin);
        for (std::size_t i = 0; i < last_front.size(); ++i) last_front[i] = last_begin + i;

        const auto admitted = niche_select(last_front, assoc, refs, n - last_begin, rng);
        chosen.reserve(n);
        for (std::size_t pos = 0; pos < last_begin; ++pos) chosen.push_back(pos);
        chosen.insert(chosen.end(), admitted.begin(), admitted.end());
    }

    std::vector<Individual> next;
    next.reserve(n);
    for (std::size_t pos : chosen) next.push_back(std::move(merged[candidates[pos]]));
    return next;
}

void adapt_references(const Population& pop, NormalizationState& norm, ReferencePointSet& refs) {
    std::vector<ObjectiveVector> objectives;
    objectives.reserve(pop.size());
    for (const auto& ind : pop.members) objectives.push_back(ind.objectives);

    auto normalized = normalize_all(norm, objectives);
    refresh_niche_counts(refs, associate(normalized, refs));
    include_reference_points(refs);
    refresh_niche_counts(refs, associate(normalized, refs));
    exclude_reference_points(refs);
}

}   // namespace

std::uint64_t fnv1a_bytes(const void* data, std::size_t length, std::uint64_t seed) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < length; ++i) {
        h ^= bytes[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t hash_decisions(const Population& pop) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const auto& ind : pop.members) {
        if (ind.decision.encoding == Encoding::Real)
            h = fnv1a_bytes(ind.decision.reals.data(), ind.decision.reals.size() * sizeof(double), h);
        else
            h = fnv1a_bytes(ind.decision.bits.data(), ind.decision.bits.size(), h);
    }
    return h;
}

RunResult run_algorithm(const ProblemDefinition& problem, const RunConfig& config,
                        const GenerationObserver& observer) {
    config.validate();
    if (problem.num_objectives != config.num_objectives)
        throw std::invalid_argument("problem and config disagree on the objective count");

    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t n = config.population_size;
    const int m = config.num_objectives;

    RunRngs rngs(config.seed);
    EvaluationCounter counter;
    ReferencePointSet refs = build_reference_set(m, n);

    Population pop;
    pop.capacity = n;
    pop.members.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pop.members.push_back(evaluate(problem, random_decision(problem, rngs.init), counter));

    RunResult result;
    result.seed = config.seed;
    result.initial_population_hash = hash_decisions(pop);

    NormalizationState norm;
    UrState ur;
    if (config.algorithm == AlgorithmId::Nsga3Ur) {
        if (config.forced_mode == ForcedMode::Static) {
            ur.decided = true;
            ur.adaptive = false;
        } else if (config.forced_mode == ForcedMode::Adaptive) {
            ur.decided = true;
            ur.adaptive = true;
        }
    }

    auto mode_now = [&]() {
        switch (config.algorithm) {
            case AlgorithmId::Nsga3: return false;
            case AlgorithmId::ANsga3: return true;
            case AlgorithmId::Nsga3Ur: return ur.adaptive;
        }
        return false;
    };

    std::size_t generation = 0;
    while (counter.count + n <= config.max_evaluations) {
        ++generation;

        const MatingPools pools = tournament_select(pop, problem.constrained, rngs.tournament);
        std::vector<Individual> merged = pop.members;
        {
            auto children = make_offspring(pop, pools, problem, config, rngs, counter);
            merged.insert(merged.end(), std::make_move_iterator(children.begin()),
                          std::make_move_iterator(children.end()));
        }
        pop.members = environmental_selection(merged, problem, n, norm, refs, rngs.niching);

        // Adaptation precedes the mode decision within a generation, so the
        // generation that flips the mode does not itself adapt.
        if (mode_now()) adapt_references(pop, norm, refs);

        if (config.algorithm == AlgorithmId::Nsga3Ur && !ur.decided) {
            std::vector<ObjectiveVector> objectives;
            objectives.reserve(pop.size());
            for (const auto& ind : pop.members) objectives.push_back(ind.objectives);
            const auto normalized = normalize_all(norm, objectives);
            if (ur_decide(ur, generation, config.generation_budget(), config.start_fraction,
                          normalized, m, config.si_divisor, config.si_scaling)) {
                result.decision = UrDecisionRecord{generation, ur.si, ur.threshold, ur.adaptive};
            }
        }

        result.trace.push_back({generation, counter.count, refs.size(), mode_now()});
        if (observer) observer(pop, generation);
    }

    result.final_population = std::move(pop);
    result.final_references = std::move(refs);
    result.adaptive_mode = mode_now();
    result.evaluations = counter.count;
    result.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

RunResult run_nsga3(const ProblemDefinition& problem, RunConfig config) {
    config.algorithm = AlgorithmId::Nsga3;
    return run_algorithm(problem, config);
}

RunResult run_a_nsga3(const ProblemDefinition& problem, RunConfig config) {
    config.algorithm = AlgorithmId::ANsga3;
    return run_algorithm(problem, config);
}

RunResult run_nsga3_ur(const ProblemDefinition& problem, RunConfig config) {
    config.algorithm = AlgorithmId::Nsga3Ur;
    return run_algorithm(problem, config);
}

}   // namespace moea
