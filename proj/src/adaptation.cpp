#include "moea/adaptation.hpp"

#include <cmath>
#include <stdexcept>

namespace moea {

double spreading_index(std::span<const std::vector<double>> normalized, double divisor,
                       SiScaling scaling) {
    if (normalized.empty()) throw std::invalid_argument("spreading index of an empty population");
    if (divisor <= 0.0) throw std::invalid_argument("spreading index divisor must be positive");

    double sum = 0.0;
    for (const auto& row : normalized)
        for (double v : row) sum += v * v;
    if (scaling == SiScaling::Rms) sum /= static_cast<double>(normalized.size());
    return std::sqrt(sum) / divisor;
}

double regularity_threshold(int num_objectives) {
    const double m = static_cast<double>(num_objectives);
    return -0.00001989 * m * m * m + 0.0002034 * m * m + 0.03376 * m - 0.2373;
}

bool ur_decide(UrState& state,
               std::size_t generation,
               std::uint64_t generation_budget,
               double start_fraction,
               std::span<const std::vector<double>> normalized,
               int num_objectives,
               double si_divisor,
               SiScaling scaling) {
    if (state.decided) return false;
    const auto trigger = static_cast<std::size_t>(
        std::floor(start_fraction * static_cast<double>(generation_budget)));
    if (generation != trigger) return false;

    state.si = spreading_index(normalized, si_divisor, scaling);
    state.threshold = regularity_threshold(num_objectives);
    state.adaptive = state.si > state.threshold;   // strict: equality stays static
    state.decided = true;
    state.decision_generation = generation;
    return true;
}

std::size_t include_reference_points(ReferencePointSet& refs) {
    if (refs.granularity < 1) throw std::invalid_argument("reference set has no lattice spacing");
    const std::size_t m = refs.points.empty() ? 0 : refs.points[0].coords.size();
    const double spacing = 1.0 / static_cast<double>(refs.granularity);
    const double shift = spacing / static_cast<double>(m);

    const std::size_t existing = refs.points.size();
    std::size_t added = 0;
    for (std::size_t c = 0; c < existing; ++c) {
        if (refs.points[c].niche_count < 2) continue;
        for (std::size_t axis = 0; axis < m; ++axis) {
            std::vector<double> coords = refs.points[c].coords;
            for (double& v : coords) v -= shift;
            coords[axis] += spacing;

            bool off_simplex = false;
            for (double& v : coords) {
                if (v < -1e-9) {
                    off_simplex = true;
                    break;
                }
                if (v < 0.0) v = 0.0;
            }
            if (off_simplex) continue;

            const bool duplicate = [&] {
                for (const auto& q : refs.points) {
                    bool same = true;
                    for (std::size_t i = 0; i < m; ++i)
                        if (std::fabs(q.coords[i] - coords[i]) > 1e-12) {
                            same = false;
                            break;
                        }
                    if (same) return true;
                }
                return false;
            }();
            if (duplicate) continue;

            ReferencePoint p;
            p.coords = std::move(coords);
            p.adapted = true;
            refs.points.push_back(std::move(p));
            ++added;
        }
    }
    return added;
}

std::size_t exclude_reference_points(ReferencePointSet& refs) {
    const std::size_t before = refs.points.size();
    std::erase_if(refs.points, [](const ReferencePoint& p) { return p.adapted && p.niche_count == 0; });
    return before - refs.points.size();
}

}   // namespace moea
