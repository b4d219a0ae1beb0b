#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "moea/core.hpp"
#include "moea/indicators.hpp"

using namespace moea;

namespace {

// Exact hypervolume oracle for small sets: coordinate-compressed grid. Each
// cell of the grid spanned by the point coordinates is either fully
// dominated or fully clear, so summing dominated cell volumes is exact.
double hv_grid_oracle(const std::vector<ObjectiveVector>& points, const ObjectiveVector& ref) {
    const std::size_t m = ref.size();
    std::vector<std::vector<double>> kept;
    for (const auto& p : points) {
        std::vector<double> q(m);
        bool inside = true;
        for (std::size_t i = 0; i < m; ++i) {
            q[i] = p[i] / ref[i];
            if (!(q[i] < 1.0)) { inside = false; break; }
        }
        if (inside) kept.push_back(q);
    }
    if (kept.empty()) return 0.0;

    std::vector<std::vector<double>> cuts(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& q : kept) cuts[i].push_back(q[i]);
        cuts[i].push_back(1.0);
        std::sort(cuts[i].begin(), cuts[i].end());
        cuts[i].erase(std::unique(cuts[i].begin(), cuts[i].end()), cuts[i].end());
    }

    double volume = 0.0;
    std::vector<std::size_t> idx(m, 0);
    while (true) {
        bool in_range = true;
        for (std::size_t i = 0; i < m; ++i)
            if (idx[i] + 1 >= cuts[i].size()) { in_range = false; break; }
        if (in_range) {
            double w = 1.0;
            for (std::size_t i = 0; i < m; ++i) w *= cuts[i][idx[i] + 1] - cuts[i][idx[i]];
            bool dominated = false;
            for (const auto& q : kept) {
                bool covers = true;
                for (std::size_t i = 0; i < m; ++i)
                    if (q[i] > cuts[i][idx[i]] + 1e-15) { covers = false; break; }
                if (covers) { dominated = true; break; }
            }
            if (dominated) volume += w;
        }
        // Odometer increment over the full index space.
        std::size_t d = 0;
        while (d < m) {
            if (++idx[d] + 1 < cuts[d].size()) break;
            idx[d] = 0;
            ++d;
        }
        if (d == m) break;
    }
    return volume;
}

// Mann-Whitney U of sample a computed by direct pair counting (ties count
// half). Identical to the rank formulation by construction.
double pair_count_u(const std::vector<double>& a, const std::vector<double>& b) {
    double u = 0.0;
    for (double x : a)
        for (double y : b) {
            if (x < y) u += 1.0;
            else if (x == y) u += 0.5;
        }
    return u;
}

// Exact conditional permutation test: enumerate every split of the pooled
// sample, measure how extreme the observed U is.
struct ExactMw {
    double p = 1.0;
    Mark mark = Mark::Approx;
};

ExactMw exact_mann_whitney(const std::vector<double>& a, const std::vector<double>& b,
                           double alpha, Better direction) {
    const std::size_t na = a.size(), nb = b.size(), n = na + nb;
    std::vector<double> pool(a);
    pool.insert(pool.end(), b.begin(), b.end());
    const double mu = 0.5 * double(na) * double(nb);
    const double t_obs = std::fabs(pair_count_u(a, b) - mu);

    std::vector<std::size_t> comb(na);
    std::iota(comb.begin(), comb.end(), 0);
    std::size_t total = 0, extreme = 0;
    while (true) {
        std::vector<bool> in_a(n, false);
        for (std::size_t i : comb) in_a[i] = true;
        std::vector<double> xa, xb;
        for (std::size_t i = 0; i < n; ++i) (in_a[i] ? xa : xb).push_back(pool[i]);
        ++total;
        if (std::fabs(pair_count_u(xa, xb) - mu) >= t_obs - 1e-12) ++extreme;

        // Next combination in lexicographic order.
        std::size_t k = na;
        while (k-- > 0) {
            if (comb[k] + (na - k) < n) {
                ++comb[k];
                for (std::size_t j = k + 1; j < na; ++j) comb[j] = comb[j - 1] + 1;
                break;
            }
            if (k == 0) { k = std::size_t(-1); break; }
        }
        if (k == std::size_t(-1)) break;
    }

    ExactMw res;
    res.p = double(extreme) / double(total);
    if (res.p < alpha) {
        // pair_count_u counts pairs where the a-observation is smaller, so a
        // tends lower when the count exceeds its null mean.
        const bool a_tends_lower = pair_count_u(a, b) > mu;
        const bool a_better = direction == Better::Lower ? a_tends_lower : !a_tends_lower;
        res.mark = a_better ? Mark::Plus : Mark::Minus;
    }
    return res;
}

}   // namespace

TEST_SUITE("indicators") {

TEST_CASE("a solution set equal to the reference has distance zero") {
    const std::vector<ObjectiveVector> ref = {{0.0, 0.0}, {0.5, 0.5}, {1.0, 1.0}};
    CHECK(igd(ref, ref) == 0.0);
}

TEST_CASE("mean-nearest distance computed by hand") {
    const std::vector<ObjectiveVector> reference = {{0.0, 0.0}, {1.0, 1.0}};
    const std::vector<ObjectiveVector> solutions = {{0.0, 0.0}};
    // One reference point is hit, the other sits sqrt(2) away: mean is half.
    CHECK(igd(solutions, reference) == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("adding a solution point never increases the distance") {
    RngStream rng(313);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<ObjectiveVector> reference(15, ObjectiveVector(3));
        for (auto& r : reference)
            for (auto& v : r) v = rng.uniform();
        std::vector<ObjectiveVector> solutions(4, ObjectiveVector(3));
        for (auto& s : solutions)
            for (auto& v : s) v = rng.uniform();
        const double before = igd(solutions, reference);
        solutions.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
        CHECK(igd(solutions, reference) <= before + 1e-15);
    }
}

TEST_CASE("the distance is invariant under a common translation") {
    RngStream rng(317);
    std::vector<ObjectiveVector> reference(10, ObjectiveVector(3)), solutions(5, ObjectiveVector(3));
    for (auto& r : reference)
        for (auto& v : r) v = rng.uniform();
    for (auto& s : solutions)
        for (auto& v : s) v = rng.uniform();
    const double base = igd(solutions, reference);
    const ObjectiveVector shift = {2.5, -1.25, 0.75};
    for (auto& r : reference)
        for (std::size_t i = 0; i < 3; ++i) r[i] += shift[i];
    for (auto& s : solutions)
        for (std::size_t i = 0; i < 3; ++i) s[i] += shift[i];
    CHECK(igd(solutions, reference) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("degenerate distance inputs are rejected") {
    const std::vector<ObjectiveVector> some = {{0.0, 0.0}};
    const std::vector<ObjectiveVector> none;
    CHECK_THROWS_AS(igd(none, some), std::invalid_argument);
    CHECK_THROWS_AS(igd(some, none), std::invalid_argument);
    const std::vector<ObjectiveVector> wrong = {{0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(igd(wrong, some), std::invalid_argument);
}

TEST_CASE("single-box volumes computed by hand") {
    const std::vector<ObjectiveVector> one = {{0.5, 0.5}};
    CHECK(hv_exact(one, {1.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-12));
    const std::vector<ObjectiveVector> cube = {{0.5, 0.5, 0.5}};
    CHECK(hv_exact(cube, {1.0, 1.0, 1.0}) == doctest::Approx(0.125).epsilon(1e-12));
    const std::vector<ObjectiveVector> hyper = {{0.5, 0.5, 0.5, 0.5}};
    CHECK(hv_exact(hyper, {1.0, 1.0, 1.0, 1.0}) == doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("two overlapping boxes by inclusion-exclusion") {
    const std::vector<ObjectiveVector> two = {{0.25, 0.75}, {0.75, 0.25}};
    // 0.25*0.75 twice, minus the 0.25*0.25 overlap: 0.3125.
    CHECK(hv_exact(two, {1.0, 1.0}) == doctest::Approx(0.3125).epsilon(1e-12));
}

TEST_CASE("points on or past the reference contribute nothing") {
    const std::vector<ObjectiveVector> border = {{1.0, 1.0}};
    CHECK(hv_exact(border, {1.0, 1.0}) == 0.0);
    const std::vector<ObjectiveVector> mixed = {{0.5, 0.5}, {1.0, 0.25}, {2.0, 0.1}};
    CHECK(hv_exact(mixed, {1.0, 1.0}) == doctest::Approx(0.25).epsilon(1e-12));
    const std::vector<ObjectiveVector> none;
    CHECK(hv_exact(none, {1.0, 1.0}) == 0.0);
}

TEST_CASE("dominated points never change the volume") {
    const std::vector<ObjectiveVector> base = {{0.25, 0.75}, {0.75, 0.25}};
    const double a = hv_exact(base, {1.0, 1.0});
    auto padded = base;
    padded.push_back({0.8, 0.8});   // dominated by (0.75, 0.25)
    padded.push_back({0.9, 0.3});   // dominated by (0.75, 0.25)
    CHECK(hv_exact(padded, {1.0, 1.0}) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("adding a non-dominated point grows the volume") {
    RngStream rng(331);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<ObjectiveVector> pts(4, ObjectiveVector(3));
        for (auto& p : pts)
            for (auto& v : p) v = rng.uniform(0.1, 0.9);
        const ObjectiveVector ref = {1.0, 1.0, 1.0};
        const double before = hv_exact(pts, ref);
        pts.push_back({rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9), rng.uniform(0.1, 0.9)});
        CHECK(hv_exact(pts, ref) >= before - 1e-15);
    }
}

TEST_CASE("the sweep agrees with the grid oracle on random sets") {
    RngStream rng(337);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 2 + rng.index(2);   // two or three objectives
        const std::size_t n = 1 + rng.index(8);
        std::vector<ObjectiveVector> pts(n, ObjectiveVector(m));
        for (auto& p : pts)
            for (auto& v : p) v = rng.uniform(0.0, 1.2);   // some points fall outside
        ObjectiveVector ref(m, 1.0);
        CHECK(hv_exact(pts, ref) == doctest::Approx(hv_grid_oracle(pts, ref)).epsilon(1e-9));
    }
}

TEST_CASE("reference points sit ten percent above the front maximum") {
    const std::vector<ObjectiveVector> front = {{1.0, 0.0}, {0.0, 2.0}};
    const auto z = hv_reference_point(front);
    CHECK(z[0] == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(z[1] == doctest::Approx(2.2).epsilon(1e-12));
    const std::vector<ObjectiveVector> none;
    CHECK_THROWS_AS(hv_reference_point(none), std::invalid_argument);
}

TEST_CASE("normalized volumes never exceed one") {
    RngStream rng(347);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<ObjectiveVector> pts(6, ObjectiveVector(3));
        for (auto& p : pts)
            for (auto& v : p) v = rng.uniform(0.0, 3.0);
        const auto z = hv_reference_point(pts);
        const double v = hv_exact(pts, z);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("sampling agrees with the exact volume within three standard errors") {
    RngStream data_rng(353);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<ObjectiveVector> pts(5, ObjectiveVector(3));
        for (auto& p : pts)
            for (auto& v : p) v = data_rng.uniform(0.1, 0.9);
        const ObjectiveVector ref = {1.0, 1.0, 1.0};
        const double exact = hv_exact(pts, ref);

        const std::size_t samples = 200000;
        RngStream mc_rng(1000 + trial);
        const double est = hv_monte_carlo(pts, ref, samples, mc_rng);

        // The estimator is box * Binomial(samples, q)/samples; bound its
        // standard error with the conservative q=1/2 value.
        std::vector<double> lo(3, 1.0);
        for (const auto& p : pts)
            for (int i = 0; i < 3; ++i) lo[i] = std::min(lo[i], p[i] / ref[i]);
        double box = 1.0;
        for (int i = 0; i < 3; ++i) box *= 1.0 - lo[i];
        const double se = box * 0.5 / std::sqrt(double(samples));
        CHECK(std::fabs(est - exact) <= 3.0 * se);
    }
}

TEST_CASE("sampling an empty set gives zero") {
    RngStream rng(1);
    const std::vector<ObjectiveVector> none;
    CHECK(hv_monte_carlo(none, {1.0, 1.0, 1.0}, 1000, rng) == 0.0);
    CHECK_THROWS_AS(hv_monte_carlo(none, {1.0, 1.0, 1.0}, 0, rng), std::invalid_argument);
}

TEST_CASE("doubling the samples roughly halves the estimator variance") {
    const std::vector<ObjectiveVector> pts = {
        {0.2, 0.7, 0.5}, {0.6, 0.3, 0.4}, {0.5, 0.5, 0.2}, {0.8, 0.1, 0.6}};
    const ObjectiveVector ref = {1.0, 1.0, 1.0};
    auto variance = [&](std::size_t samples) {
        std::vector<double> vals;
        for (int rep = 0; rep < 30; ++rep) {
            RngStream rng(9000 + rep);
            vals.push_back(hv_monte_carlo(pts, ref, samples, rng));
        }
        const double mean = std::accumulate(vals.begin(), vals.end(), 0.0) / vals.size();
        double ss = 0.0;
        for (double v : vals) ss += (v - mean) * (v - mean);
        return ss / double(vals.size() - 1);
    };
    const double ratio = variance(20000) / variance(40000);
    CHECK(ratio > 1.4);   // 2 +/- 30%
    CHECK(ratio < 2.6);
}

TEST_CASE("the automatic selector switches on the objective count") {
    const std::vector<ObjectiveVector> low = {{0.25, 0.75}, {0.75, 0.25}};
    RngStream rng_a(5), rng_b(5);
    CHECK(hypervolume_auto(low, {1.0, 1.0}, rng_a) == hv_exact(low, {1.0, 1.0}));
    CHECK(rng_a.uniform() == rng_b.uniform());   // the exact path leaves the rng untouched

    std::vector<ObjectiveVector> high(4, ObjectiveVector(5));
    RngStream data_rng(11);
    for (auto& p : high)
        for (auto& v : p) v = data_rng.uniform(0.1, 0.9);
    RngStream auto_rng(21), manual_rng(21);
    const double via_auto = hypervolume_auto(high, ObjectiveVector(5, 1.0), auto_rng);
    const double via_mc = hv_monte_carlo(high, ObjectiveVector(5, 1.0), 1000000, manual_rng);
    CHECK(via_auto == via_mc);
}

TEST_CASE("identical samples are never significant") {
    const std::vector<double> a = {0.1, 0.2, 0.3, 0.1};
    const auto res = mann_whitney(a, a, 0.05, Better::Lower);
    CHECK(res.mark == Mark::Approx);
    CHECK(res.p == 1.0);
    CHECK(mark_symbol(res.mark) == '~');
}

TEST_CASE("well separated large samples are significant both ways") {
    std::vector<double> lo(30), hi(30);
    RngStream rng(373);
    for (int i = 0; i < 30; ++i) {
        lo[i] = 0.01 + 0.001 * rng.uniform();
        hi[i] = 0.1 + 0.01 * rng.uniform();
    }
    CHECK(mann_whitney(lo, hi, 0.05, Better::Lower).mark == Mark::Plus);
    CHECK(mann_whitney(lo, hi, 0.05, Better::Higher).mark == Mark::Minus);
    CHECK(mann_whitney(hi, lo, 0.05, Better::Lower).mark == Mark::Minus);
    CHECK(mann_whitney(hi, lo, 0.05, Better::Higher).mark == Mark::Plus);
}

TEST_CASE("three against three cannot reach significance") {
    // The exact two-sided floor at this size is p = 0.1, so even complete
    // separation stays approximate at the 0.05 level.
    const std::vector<double> a = {0.01, 0.02, 0.03};
    const std::vector<double> b = {0.9, 0.95, 1.0};
    const auto res = mann_whitney(a, b, 0.05, Better::Lower);
    CHECK(res.mark == Mark::Approx);
    CHECK(res.u == 0.0);
    const auto oracle = exact_mann_whitney(a, b, 0.05, Better::Lower);
    CHECK(oracle.p == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(oracle.mark == Mark::Approx);
}

TEST_CASE("swapping the samples mirrors the mark") {
    RngStream rng(379);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<double> a(8), b(8);
        const double shift = rng.uniform(0.0, 0.5);
        for (int i = 0; i < 8; ++i) {
            a[i] = rng.uniform();
            b[i] = rng.uniform() + shift;
        }
        const auto ab = mann_whitney(a, b, 0.05, Better::Lower);
        const auto ba = mann_whitney(b, a, 0.05, Better::Lower);
        if (ab.mark == Mark::Plus) CHECK(ba.mark == Mark::Minus);
        if (ab.mark == Mark::Minus) CHECK(ba.mark == Mark::Plus);
        if (ab.mark == Mark::Approx) CHECK(ba.mark == Mark::Approx);
        CHECK(ab.p == doctest::Approx(ba.p).epsilon(1e-12));
    }
}

TEST_CASE("the u statistic equals the pair-counting definition") {
    RngStream rng(383);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> a(3 + rng.index(6)), b(3 + rng.index(6));
        for (auto& v : a) v = double(rng.index(6)) / 4.0;   // force ties
        for (auto& v : b) v = double(rng.index(6)) / 4.0;
        const auto res = mann_whitney(a, b, 0.05, Better::Lower);
        // The reported statistic counts pairs where the a-observation is the
        // larger one (ties half), the complement of the smaller-pair count.
        const double greater_pairs = double(a.size()) * double(b.size()) - pair_count_u(a, b);
        CHECK(res.u == doctest::Approx(greater_pairs).epsilon(1e-12));
    }
}

TEST_CASE("marks agree with the exact permutation oracle on frozen cases") {
    RngStream rng(4242);
    int significant_seen = 0, approx_seen = 0;
    for (int k = 0; k < 30; ++k) {
        const std::size_t na = 3 + k % 6;
        const std::size_t nb = 3 + (k / 2) % 6;
        std::vector<double> a(na), b(nb);
        switch (k % 5) {
            case 0:   // far apart: the oracle calls these significant
                for (auto& v : a) v = rng.uniform(0.0, 0.05);
                for (auto& v : b) v = rng.uniform(0.9, 1.0);
                break;
            case 1:   // fully overlapping
                for (auto& v : a) v = rng.uniform();
                for (auto& v : b) v = rng.uniform();
                break;
            case 2:   // large shift
                for (auto& v : a) v = rng.uniform(0.0, 0.3);
                for (auto& v : b) v = rng.uniform(0.55, 1.0);
                break;
            case 3:   // coarse grid: heavy ties
                for (auto& v : a) v = double(rng.index(3)) / 2.0;
                for (auto& v : b) v = double(rng.index(3)) / 2.0;
                break;
            default:  // all equal
                for (auto& v : a) v = 0.5;
                for (auto& v : b) v = 0.5;
                break;
        }
        const auto res = mann_whitney(a, b, 0.05, Better::Lower);
        const auto oracle = exact_mann_whitney(a, b, 0.05, Better::Lower);
        INFO("case ", k, " na=", na, " nb=", nb, " p=", res.p, " exact=", oracle.p);
        CHECK(res.mark == oracle.mark);
        if (oracle.mark == Mark::Approx) ++approx_seen;
        else ++significant_seen;
    }
    // The frozen set must exercise both outcomes to mean anything.
    CHECK(significant_seen >= 8);
    CHECK(approx_seen >= 8);
}

TEST_CASE("empty samples are rejected") {
    const std::vector<double> some = {1.0};
    const std::vector<double> none;
    CHECK_THROWS_AS(mann_whitney(none, some, 0.05, Better::Lower), std::invalid_argument);
    CHECK_THROWS_AS(mann_whitney(some, none, 0.05, Better::Lower), std::invalid_argument);
}

}   // TEST_SUITE
