#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "moea/core.hpp"

namespace moea {

/// Two mating pools of population-size indices, each filled by binary
/// tournaments: dominance decides when it can, otherwise the winner is a
/// fair coin flip.
struct MatingPools {
    std::vector<std::size_t> first;
    std::vector<std::size_t> second;
};

MatingPools tournament_select(const Population& pop, bool constrained, RngStream& rng);

/// Simulated binary crossover. Applied per variable with probability 0.5
/// when the pair-level p_crossover draw fires; the spread factor comes from
/// the eta_crossover polynomial and children swap with probability 0.5.
/// Children are clamped to the bounds afterwards.
std::pair<DecisionVector, DecisionVector> sbx_crossover(const DecisionVector& a,
                                                        const DecisionVector& b,
                                                        const OperatorParams& params,
                                                        const Bounds& bounds,
                                                        RngStream& rng);

/// Bounded polynomial mutation: each variable mutates with probability p_m
/// and the perturbation distribution respects the distance to its bounds.
DecisionVector polynomial_mutation(const DecisionVector& x,
                                   double p_mutation,
                                   double eta_mutation,
                                   const Bounds& bounds,
                                   RngStream& rng);

/// One-point crossover for bit strings; the cut position is uniform over
/// [1, d-1].
std::pair<DecisionVector, DecisionVector> one_point_crossover(const DecisionVector& a,
                                                              const DecisionVector& b,
                                                              RngStream& rng);

/// Independent bit flips with probability p_m per bit.
DecisionVector bitwise_mutation(const DecisionVector& x, double p_mutation, RngStream& rng);

}   // namespace moea
