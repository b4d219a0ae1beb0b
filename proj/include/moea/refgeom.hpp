#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moea/core.hpp"

namespace moea {

struct ReferencePoint {
    std::vector<double> coords;   // on the unit simplex: coords >= 0, sum == 1
    bool adapted = false;         // true for points inserted by adaptation
    int niche_count = 0;
};

/// A set of reference directions. `granularity` is the Das-Dennis H of the
/// (outer) lattice and `lattice_size` the number of points the construction
/// started from; adaptation may grow the set past it but never below it.
struct ReferencePointSet {
    std::vector<ReferencePoint> points;
    int granularity = 0;
    std::size_t lattice_size = 0;

    std::size_t size() const { return points.size(); }
    void reset_niche_counts() {
        for (auto& p : points) p.niche_count = 0;
    }
};

/// Das-Dennis simplex lattice: all vectors with coordinates that are
/// non-negative multiples of 1/divisions summing to one. The count is
/// C(m + divisions - 1, divisions); enumeration stops with an error when
/// that exceeds an internal cap.
ReferencePointSet das_dennis(int m, int divisions);

std::size_t das_dennis_count(int m, int divisions);

/// Reference set sized for a target population: the densest single lattice
/// not exceeding the target when it gets within 75% of it, otherwise a
/// boundary layer plus an inner layer shrunk toward the centroid
/// (p <- tau*p + (1-tau)/m with tau = 0.5).
ReferencePointSet build_reference_set(int m, std::size_t target);

/// Running normalization state. The ideal point persists across generations
/// (component-wise minimum over everything seen); intercepts are rebuilt
/// each call from extreme points of the given population.
struct NormalizationState {
    std::vector<double> ideal;
    std::vector<double> intercepts;

    bool initialized() const { return !ideal.empty(); }

    /// Map one objective vector into the normalized space.
    std::vector<double> normalize(const ObjectiveVector& f) const;
};

void update_normalization(NormalizationState& state, std::span<const ObjectiveVector> objectives);

std::vector<std::vector<double>> normalize_all(const NormalizationState& state,
                                               std::span<const ObjectiveVector> objectives);

/// Perpendicular distance from a point to the ray through the origin and a
/// reference direction.
double perpendicular_distance(std::span<const double> point, std::span<const double> direction);

/// Closest reference direction for each normalized point; ties go to the
/// lowest reference index.
struct Association {
    std::vector<std::size_t> ref_index;
    std::vector<double> distance;
};

Association associate(std::span<const std::vector<double>> normalized, const ReferencePointSet& refs);

/// Count members per reference direction from an association. Counts are
/// written into refs.points[*].niche_count, replacing previous values.
void refresh_niche_counts(ReferencePointSet& refs, const Association& assoc);

/// Niche-preserving choice of `slots` members of `last_front` (indices into
/// the association arrays). refs must carry the niche counts of the already
/// confirmed members; counts are updated as members are admitted. Each round
/// picks a minimal-count reference (random tie-break), admits the closest
/// candidate when the count is zero and a random one otherwise; references
/// whose candidates are exhausted leave the rotation.
std::vector<std::size_t> niche_select(const std::vector<std::size_t>& last_front,
                                      const Association& assoc,
                                      ReferencePointSet& refs,
                                      std::size_t slots,
                                      RngStream& rng);

}   // namespace moea
