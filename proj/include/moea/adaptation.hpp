#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moea/core.hpp"
#include "moea/refgeom.hpp"

namespace moea {

/// Spreading index of a normalized population: the square root of the summed
/// squared coordinates, divided by `divisor`. With SiScaling::Rms the sum is
/// divided by the population size before the root, which makes the value
/// independent of N for homogeneous populations.
double spreading_index(std::span<const std::vector<double>> normalized, double divisor,
                       SiScaling scaling = SiScaling::Literal);

/// Cubic regularity threshold in the number of objectives.
double regularity_threshold(int num_objectives);

/// Mode state of the conditional adaptation: static until the one-shot test
/// at the decision generation flips it, after which it never changes again.
struct UrState {
    bool adaptive = false;
    bool decided = false;
    std::size_t decision_generation = 0;
    double si = 0.0;
    double threshold = 0.0;
};

/// Runs the one-shot regularity test when `generation` equals
/// floor(start_fraction * generation_budget); otherwise leaves the state
/// untouched. Returns true when the decision fired on this call.
bool ur_decide(UrState& state,
               std::size_t generation,
               std::uint64_t generation_budget,
               double start_fraction,
               std::span<const std::vector<double>> normalized,
               int num_objectives,
               double si_divisor,
               SiScaling scaling);

/// For every reference point whose niche count is at least two, add the m
/// points of the local simplex centred on it with the lattice spacing
/// 1/granularity. Candidates that leave the simplex (a negative coordinate)
/// or duplicate an existing point within 1e-12 are discarded. Returns the
/// number of points added; added points carry the adapted flag.
std::size_t include_reference_points(ReferencePointSet& refs);

/// Remove every adapted point whose niche count is zero. Lattice points are
/// never removed. Returns the number of points dropped.
std::size_t exclude_reference_points(ReferencePointSet& refs);

}   // namespace moea
