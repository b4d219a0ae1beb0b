#include "moea/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace moea {

namespace {

// Points scaled by the reference vector; only points strictly inside the
// unit box survive (anything else contributes no volume).
std::vector<std::vector<double>> normalize_by_reference(std::span<const ObjectiveVector> points,
                                                        const ObjectiveVector& reference) {
    for (double r : reference)
        if (!(r != 0.0) || !std::isfinite(r))
            throw std::invalid_argument("hypervolume reference point must be non-zero and finite");

    std::vector<std::vector<double>> kept;
    for (const auto& p : points) {
        if (p.size() != reference.size())
            throw std::invalid_argument("hypervolume point dimension mismatch");
        std::vector<double> q(p.size());
        bool inside = true;
        for (std::size_t i = 0; i < p.size(); ++i) {
            q[i] = p[i] / reference[i];
            if (!(q[i] < 1.0)) {
                inside = false;
                break;
            }
        }
        if (inside) kept.push_back(std::move(q));
    }
    return kept;
}

bool dominates_vec(const std::vector<double>& a, const std::vector<double>& b) {
    bool better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) better = true;
    }
    return better;
}

// Insert a point into a mutually non-dominated archive, dropping whatever it
// dominates. Returns false when the point is itself dominated (or equal).
bool archive_insert(std::vector<std::vector<double>>& archive, const std::vector<double>& q) {
    for (const auto& a : archive)
        if (a == q || dominates_vec(a, q)) return false;
    std::erase_if(archive, [&](const std::vector<double>& a) { return dominates_vec(q, a); });
    archive.push_back(q);
    return true;
}

// Recursive dimension sweep over minimization points inside the unit box
// with reference corner at one. Slabs run along the last coordinate; each
// slab multiplies its thickness by the volume of the projection of the
// points already passed.
double sweep(std::vector<std::vector<double>> pts, std::size_t m) {
    if (pts.empty()) return 0.0;
    if (m == 1) {
        double lo = 1.0;
        for (const auto& q : pts) lo = std::min(lo, q[0]);
        return 1.0 - lo;
    }

    std::sort(pts.begin(), pts.end(),
              [m](const std::vector<double>& a, const std::vector<double>& b) {
                  return a[m - 1] < b[m - 1];
              });

    double volume = 0.0;
    std::vector<std::vector<double>> active;   // non-dominated projections so far
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> proj(pts[i].begin(), pts[i].end() - 1);
        archive_insert(active, proj);
        const double top = i + 1 < pts.size() ? pts[i + 1][m - 1] : 1.0;
        const double thickness = top - pts[i][m - 1];
        if (thickness > 0.0) volume += thickness * sweep(active, m - 1);
    }
    return volume;
}

}   // namespace

double igd(std::span<const ObjectiveVector> solutions, std::span<const ObjectiveVector> reference) {
    if (solutions.empty()) throw std::invalid_argument("igd of an empty solution set");
    if (reference.empty()) throw std::invalid_argument("igd against an empty reference set");

    double total = 0.0;
    for (const auto& r : reference) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : solutions) {
            if (s.size() != r.size()) throw std::invalid_argument("igd dimension mismatch");
            double sq = 0.0;
            for (std::size_t i = 0; i < r.size(); ++i) {
                const double d = s[i] - r[i];
                sq += d * d;
            }
            best = std::min(best, sq);
        }
        total += std::sqrt(best);
    }
    return total / static_cast<double>(reference.size());
}

ObjectiveVector hv_reference_point(std::span<const ObjectiveVector> front) {
    if (front.empty()) throw std::invalid_argument("reference point of an empty front");
    ObjectiveVector z(front[0].size(), -std::numeric_limits<double>::infinity());
    for (const auto& f : front)
        for (std::size_t i = 0; i < z.size(); ++i) z[i] = std::max(z[i], f[i]);
    for (double& v : z) v *= 1.1;
    return z;
}

double hv_exact(std::span<const ObjectiveVector> points, const ObjectiveVector& reference) {
    auto kept = normalize_by_reference(points, reference);
    if (kept.empty()) return 0.0;
    return sweep(std::move(kept), reference.size());
}

double hv_monte_carlo(std::span<const ObjectiveVector> points, const ObjectiveVector& reference,
                      std::size_t samples, RngStream& rng) {
    if (samples == 0) throw std::invalid_argument("monte-carlo hypervolume needs samples");
    auto kept = normalize_by_reference(points, reference);
    if (kept.empty()) return 0.0;

    const std::size_t m = reference.size();
    std::vector<double> lo(m, 1.0);
    for (const auto& q : kept)
        for (std::size_t i = 0; i < m; ++i) lo[i] = std::min(lo[i], q[i]);

    double box = 1.0;
    for (std::size_t i = 0; i < m; ++i) box *= 1.0 - lo[i];
    if (box <= 0.0) return 0.0;

    std::vector<double> x(m);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        for (std::size_t i = 0; i < m; ++i) x[i] = lo[i] + rng.uniform() * (1.0 - lo[i]);
        for (const auto& q : kept) {
            bool dominated = true;
            for (std::size_t i = 0; i < m; ++i)
                if (q[i] > x[i]) {
                    dominated = false;
                    break;
                }
            if (dominated) {
                ++hits;
                break;
            }
        }
    }
    return box * static_cast<double>(hits) / static_cast<double>(samples);
}

double hypervolume_auto(std::span<const ObjectiveVector> points, const ObjectiveVector& reference,
                        RngStream& rng) {
    if (reference.size() <= 4) return hv_exact(points, reference);
    return hv_monte_carlo(points, reference, 1'000'000, rng);
}

char mark_symbol(Mark m) {
    switch (m) {
        case Mark::Plus: return '+';
        case Mark::Minus: return '-';
        case Mark::Approx: return '~';
    }
    return '?';
}

MannWhitneyResult mann_whitney(std::span<const double> sample_a, std::span<const double> sample_b,
                               double alpha, Better direction) {
    if (sample_a.empty() || sample_b.empty())
        throw std::invalid_argument("mann-whitney needs non-empty samples");

    const std::size_t na = sample_a.size();
    const std::size_t nb = sample_b.size();
    const std::size_t n = na + nb;

    struct Entry {
        double value;
        bool from_a;
    };
    std::vector<Entry> all;
    all.reserve(n);
    for (double v : sample_a) all.push_back({v, true});
    for (double v : sample_b) all.push_back({v, false});
    std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) { return x.value < y.value; });

    // Average ranks over tie groups; collect the tie correction term.
    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && all[j].value == all[i].value) ++j;
        const double t = static_cast<double>(j - i);
        const double avg_rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
        for (std::size_t k = i; k < j; ++k)
            if (all[k].from_a) rank_sum_a += avg_rank;
        tie_term += t * t * t - t;
        i = j;
    }

    MannWhitneyResult res;
    res.u = rank_sum_a - 0.5 * static_cast<double>(na) * (static_cast<double>(na) + 1.0);
    const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
    const double nn = static_cast<double>(n);
    const double var = static_cast<double>(na) * static_cast<double>(nb) / 12.0 *
                       ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));

    if (var <= 0.0) {   // all observations identical
        res.p = 1.0;
        res.mark = Mark::Approx;
        return res;
    }

    double z = res.u - mu;
    z -= 0.5 * (z > 0.0 ? 1.0 : (z < 0.0 ? -1.0 : 0.0));   // continuity correction
    z /= std::sqrt(var);
    res.p = std::erfc(std::fabs(z) / std::sqrt(2.0));

    if (res.p >= alpha) {
        res.mark = Mark::Approx;
        return res;
    }
    const bool a_tends_lower = res.u < mu;
    const bool a_better = direction == Better::Lower ? a_tends_lower : !a_tends_lower;
    res.mark = a_better ? Mark::Plus : Mark::Minus;
    return res;
}

}   // namespace moea
