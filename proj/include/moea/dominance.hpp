#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moea/core.hpp"

namespace moea {

/// Pareto dominance on minimization objectives: no-worse in all coordinates
/// and strictly better in at least one.
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

/// Constrained dominance (used only by problems that declare constraints):
/// feasible beats infeasible, two infeasibles compare by total violation,
/// two feasibles compare by Pareto dominance.
bool dominates(const Individual& a, const Individual& b, bool constrained);

/// Front partition: fronts[0] holds indices of the non-dominated members,
/// fronts[k] of members dominated only by fronts 0..k-1. Every index appears
/// exactly once; order inside a front follows the input order.
using FrontPartition = std::vector<std::vector<std::size_t>>;

FrontPartition fast_nondominated_sort(std::span<const Individual> pop, bool constrained);
FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> objectives);

/// Indices of the non-dominated subset (front 0), in input order.
std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> objectives);

}   // namespace moea
