#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "moea/core.hpp"

namespace moea {

/// Inverted generational distance: the mean over the reference set of the
/// minimal Euclidean distance to the solution set.
double igd(std::span<const ObjectiveVector> solutions, std::span<const ObjectiveVector> reference);

/// Reference point for hypervolume: 10% above the per-objective maximum of
/// the true front.
ObjectiveVector hv_reference_point(std::span<const ObjectiveVector> front);

/// Exact hypervolume by recursive dimension sweep. Objectives are divided by
/// the reference point first, so the result is the normalized volume in
/// [0, 1]; points that do not dominate the reference point are discarded.
double hv_exact(std::span<const ObjectiveVector> points, const ObjectiveVector& reference);

/// Monte-Carlo hypervolume estimate with `samples` uniform draws over the
/// box spanned by the retained points' minima and the reference point, in
/// the same normalized convention as hv_exact.
double hv_monte_carlo(std::span<const ObjectiveVector> points, const ObjectiveVector& reference,
                      std::size_t samples, RngStream& rng);

/// Exact sweep up to four objectives, Monte-Carlo with one million samples
/// beyond that.
double hypervolume_auto(std::span<const ObjectiveVector> points, const ObjectiveVector& reference,
                        RngStream& rng);

/// Whether smaller or larger indicator values are better.
enum class Better { Lower, Higher };

/// Significance mark for sample_a measured against sample_b: Plus when a is
/// significantly better, Minus when significantly worse, Approx otherwise.
enum class Mark { Plus, Minus, Approx };

char mark_symbol(Mark m);

struct MannWhitneyResult {
    double u = 0.0;        // U statistic of sample_a
    double p = 1.0;        // two-sided tie-corrected normal approximation
    Mark mark = Mark::Approx;
};

/// Two-sided Mann-Whitney U test with tie correction and continuity
/// correction. `direction` states which way the underlying indicator is
/// better so the mark can be oriented.
MannWhitneyResult mann_whitney(std::span<const double> sample_a, std::span<const double> sample_b,
                               double alpha, Better direction);

}   // namespace moea
