#include "moea/refgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace moea {

namespace {

// Hard cap on enumerated lattice sizes; anything past this is a
// configuration mistake, not a real reference set.
constexpr std::size_t kMaxLatticePoints = 10'000'000;

void enumerate_lattice(int m, int divisions, int coord, int remaining,
                       std::vector<int>& parts, std::vector<ReferencePoint>& out) {
    if (coord == m - 1) {
        parts[coord] = remaining;
        ReferencePoint p;
        p.coords.resize(m);
        for (int i = 0; i < m; ++i) p.coords[i] = static_cast<double>(parts[i]) / divisions;
        out.push_back(std::move(p));
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        parts[coord] = k;
        enumerate_lattice(m, divisions, coord + 1, remaining - k, parts, out);
    }
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Solve A x = 1 by Gaussian elimination with partial pivoting. Returns false
// when a pivot collapses (singular system).
bool solve_unit_rhs(std::vector<std::vector<double>> a, std::vector<double>& x) {
    const std::size_t n = a.size();
    std::vector<double> b(n, 1.0);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-12) return false;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t rr = n; rr-- > 0;) {
        double s = b[rr];
        for (std::size_t c = rr + 1; c < n; ++c) s -= a[rr][c] * x[c];
        x[rr] = s / a[rr][rr];
    }
    return true;
}

}   // namespace

std::size_t das_dennis_count(int m, int divisions) {
    if (m < 2) throw std::invalid_argument("lattice needs at least two objectives");
    if (divisions < 1) throw std::invalid_argument("lattice divisions must be positive");
    // C(m + divisions - 1, m - 1), grown incrementally so the value stays exact.
    unsigned long long c = 1;
    const unsigned long long n = static_cast<unsigned long long>(m) + divisions - 1;
    const unsigned long long k = m - 1;
    for (unsigned long long i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > kMaxLatticePoints * 1000ULL)
            throw std::invalid_argument("reference lattice size overflows the configured cap");
    }
    return static_cast<std::size_t>(c);
}

ReferencePointSet das_dennis(int m, int divisions) {
    const std::size_t count = das_dennis_count(m, divisions);
    if (count > kMaxLatticePoints)
        throw std::invalid_argument("reference lattice size " + std::to_string(count) +
                                    " exceeds the cap of " + std::to_string(kMaxLatticePoints));
    ReferencePointSet set;
    set.granularity = divisions;
    set.points.reserve(count);
    std::vector<int> parts(m, 0);
    enumerate_lattice(m, divisions, 0, divisions, parts, set.points);
    set.lattice_size = set.points.size();
    return set;
}

ReferencePointSet build_reference_set(int m, std::size_t target) {
    if (target < static_cast<std::size_t>(m))
        throw std::invalid_argument("reference target smaller than the objective count");

    int outer = 1;
    while (das_dennis_count(m, outer + 1) <= target) ++outer;
    ReferencePointSet set = das_dennis(m, outer);

    // A single layer close enough to the target (within 75%) is kept as-is;
    // otherwise add an inner layer shrunk halfway toward the centroid.
    if (4 * set.points.size() >= 3 * target) return set;

    const std::size_t remainder = target - set.points.size();
    int inner = 0;
    for (int h = 1; das_dennis_count(m, h) < remainder; ++h) inner = h;
    if (inner >= 1) {
        ReferencePointSet layer = das_dennis(m, inner);
        const double tau = 0.5;
        for (auto& p : layer.points) {
            for (double& c : p.coords) c = tau * c + (1.0 - tau) / m;
            const bool duplicate = std::any_of(set.points.begin(), set.points.end(), [&](const ReferencePoint& q) {
                for (int i = 0; i < m; ++i)
                    if (std::fabs(q.coords[i] - p.coords[i]) > 1e-12) return false;
                return true;
            });
            if (!duplicate) set.points.push_back(std::move(p));
        }
    }
    set.lattice_size = set.points.size();
    return set;
}

std::vector<double> NormalizationState::normalize(const ObjectiveVector& f) const {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        out[i] = (f[i] - ideal[i]) / std::max(intercepts[i], 1e-12);
    return out;
}

void update_normalization(NormalizationState& state, std::span<const ObjectiveVector> objectives) {
    if (objectives.empty()) throw std::invalid_argument("cannot normalize an empty population");
    const std::size_t m = objectives[0].size();

    if (!state.initialized()) state.ideal.assign(m, std::numeric_limits<double>::infinity());
    for (const auto& f : objectives)
        for (std::size_t i = 0; i < m; ++i) state.ideal[i] = std::min(state.ideal[i], f[i]);

    std::vector<double> nadir(m, -std::numeric_limits<double>::infinity());
    for (const auto& f : objectives)
        for (std::size_t i = 0; i < m; ++i) nadir[i] = std::max(nadir[i], f[i]);

    // Extreme point per axis: minimal achievement scalarizing value with
    // weight 1 on the axis and 1e-6 elsewhere, on translated objectives.
    std::vector<std::size_t> extreme(m, 0);
    for (std::size_t axis = 0; axis < m; ++axis) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t p = 0; p < objectives.size(); ++p) {
            double asf = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double t = objectives[p][i] - state.ideal[i];
                asf = std::max(asf, t / (i == axis ? 1.0 : 1e-6));
            }
            if (asf < best) {
                best = asf;
                extreme[axis] = p;
            }
        }
    }

    bool degenerate = false;
    for (std::size_t i = 0; i < m && !degenerate; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (extreme[i] == extreme[j]) {
                degenerate = true;
                break;
            }

    std::vector<double> intercepts;
    bool ok = false;
    if (!degenerate) {
        std::vector<std::vector<double>> rows(m, std::vector<double>(m));
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t i = 0; i < m; ++i) rows[r][i] = objectives[extreme[r]][i] - state.ideal[i];
        std::vector<double> plane;
        if (solve_unit_rhs(std::move(rows), plane)) {
            ok = true;
            intercepts.resize(m);
            for (std::size_t i = 0; i < m; ++i) {
                if (!(plane[i] > 0.0) || !std::isfinite(plane[i])) {
                    ok = false;
                    break;
                }
                intercepts[i] = 1.0 / plane[i];
                const double span_i = nadir[i] - state.ideal[i];
                if (intercepts[i] <= 1e-12 || intercepts[i] > span_i + 1e-9) {
                    ok = false;
                    break;
                }
            }
        }
    }

    if (!ok) {
        intercepts.resize(m);
        for (std::size_t i = 0; i < m; ++i) intercepts[i] = std::max(nadir[i] - state.ideal[i], 1e-12);
    }
    state.intercepts = std::move(intercepts);
}

std::vector<std::vector<double>> normalize_all(const NormalizationState& state,
                                               std::span<const ObjectiveVector> objectives) {
    std::vector<std::vector<double>> out;
    out.reserve(objectives.size());
    for (const auto& f : objectives) out.push_back(state.normalize(f));
    return out;
}

double perpendicular_distance(std::span<const double> point, std::span<const double> direction) {
    const double dd = dot(direction, direction);
    if (dd <= 0.0) throw std::invalid_argument("reference direction must be non-zero");
    const double pd = dot(point, direction);
    const double sq = dot(point, point) - pd * pd / dd;
    return std::sqrt(std::max(sq, 0.0));
}

Association associate(std::span<const std::vector<double>> normalized, const ReferencePointSet& refs) {
    if (refs.size() == 0) throw std::invalid_argument("cannot associate against an empty reference set");
    Association assoc;
    assoc.ref_index.resize(normalized.size());
    assoc.distance.resize(normalized.size());

    std::vector<double> ref_norm_sq(refs.size());
    for (std::size_t j = 0; j < refs.size(); ++j)
        ref_norm_sq[j] = dot(refs.points[j].coords, refs.points[j].coords);

    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const auto& p = normalized[i];
        const double pp = dot(p, p);
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < refs.size(); ++j) {
            const double pw = dot(p, refs.points[j].coords);
            const double sq = std::max(pp - pw * pw / ref_norm_sq[j], 0.0);
            if (sq < best) {
                best = sq;
                best_j = j;
            }
        }
        assoc.ref_index[i] = best_j;
        assoc.distance[i] = std::sqrt(best);
    }
    return assoc;
}

void refresh_niche_counts(ReferencePointSet& refs, const Association& assoc) {
    refs.reset_niche_counts();
    for (std::size_t j : assoc.ref_index) ++refs.points[j].niche_count;
}

std::vector<std::size_t> niche_select(const std::vector<std::size_t>& last_front,
                                      const Association& assoc,
                                      ReferencePointSet& refs,
                                      std::size_t slots,
                                      RngStream& rng) {
    if (slots > last_front.size())
        throw std::invalid_argument("niche selection asked for more members than the front holds");

    // Candidates per reference direction; the lists are disjoint because a
    // member is associated with exactly one direction.
    std::vector<std::vector<std::size_t>> candidates(refs.size());
    for (std::size_t member : last_front) candidates[assoc.ref_index[member]].push_back(member);

    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < refs.size(); ++j)
        if (!candidates[j].empty()) active.push_back(j);

    std::vector<std::size_t> admitted;
    admitted.reserve(slots);
    while (admitted.size() < slots) {
        int min_count = std::numeric_limits<int>::max();
        for (std::size_t j : active) min_count = std::min(min_count, refs.points[j].niche_count);
        std::vector<std::size_t> ties;
        for (std::size_t j : active)
            if (refs.points[j].niche_count == min_count) ties.push_back(j);
        const std::size_t j = ties.size() == 1 ? ties[0] : ties[rng.index(ties.size())];

        auto& pool = candidates[j];
        std::size_t pick_pos = 0;
        if (refs.points[j].niche_count == 0) {
            for (std::size_t k = 1; k < pool.size(); ++k)
                if (assoc.distance[pool[k]] < assoc.distance[pool[pick_pos]]) pick_pos = k;
        } else if (pool.size() > 1) {
            pick_pos = rng.index(pool.size());
        }

        admitted.push_back(pool[pick_pos]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick_pos));
        ++refs.points[j].niche_count;
        if (pool.empty()) active.erase(std::find(active.begin(), active.end(), j));
    }
    return admitted;
}

}   // namespace moea
