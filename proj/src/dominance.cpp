#include "moea/dominance.hpp"

#include <algorithm>
#include <stdexcept>

namespace moea {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("objective dimension mismatch");
    bool strictly_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) strictly_better = true;
    }
    return strictly_better;
}

bool dominates(const Individual& a, const Individual& b, bool constrained) {
    if (constrained) {
        const bool fa = a.feasible();
        const bool fb = b.feasible();
        if (fa != fb) return fa;
        if (!fa) return a.constraint_violation < b.constraint_violation;
    }
    return dominates(a.objectives, b.objectives);
}

namespace {

// Deb's counting sort: O(n^2 m) pairwise comparisons, then peel fronts.
template <typename DominatesFn>
FrontPartition sort_impl(std::size_t n, DominatesFn&& dom) {
    std::vector<std::vector<std::size_t>> dominated_by(n);
    std::vector<std::size_t> domination_count(n, 0);
    FrontPartition fronts;

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dom(p, q)) {
                dominated_by[p].push_back(q);
                ++domination_count[q];
            } else if (dom(q, p)) {
                dominated_by[q].push_back(p);
                ++domination_count[p];
            }
        }
    }

    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p)
        if (domination_count[p] == 0) current.push_back(p);

    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<std::size_t> next;
        for (std::size_t p : current) {
            for (std::size_t q : dominated_by[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        // Restore input order inside the front; the peel visits members in
        // dominator order, not index order.
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

}   // namespace

FrontPartition fast_nondominated_sort(std::span<const Individual> pop, bool constrained) {
    return sort_impl(pop.size(), [&](std::size_t p, std::size_t q) {
        return dominates(pop[p], pop[q], constrained);
    });
}

FrontPartition fast_nondominated_sort(std::span<const ObjectiveVector> objectives) {
    return sort_impl(objectives.size(), [&](std::size_t p, std::size_t q) {
        return dominates(objectives[p], objectives[q]);
    });
}

std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> objectives) {
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < objectives.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < objectives.size() && !dominated; ++j)
            dominated = j != i && dominates(objectives[j], objectives[i]);
        if (!dominated) result.push_back(i);
    }
    return result;
}

}   // namespace moea
