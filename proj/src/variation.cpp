#include "moea/variation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "moea/dominance.hpp"

namespace moea {

namespace {

std::size_t run_tournament(const Population& pop, bool constrained, RngStream& rng) {
    const std::size_t a = rng.index(pop.size());
    const std::size_t b = rng.index(pop.size());
    if (dominates(pop.members[a], pop.members[b], constrained)) return a;
    if (dominates(pop.members[b], pop.members[a], constrained)) return b;
    return rng.chance(0.5) ? a : b;
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

}   // namespace

MatingPools tournament_select(const Population& pop, bool constrained, RngStream& rng) {
    if (pop.size() == 0) throw std::invalid_argument("tournament selection on an empty population");
    MatingPools pools;
    pools.first.reserve(pop.size());
    pools.second.reserve(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) pools.first.push_back(run_tournament(pop, constrained, rng));
    for (std::size_t i = 0; i < pop.size(); ++i) pools.second.push_back(run_tournament(pop, constrained, rng));
    return pools;
}

std::pair<DecisionVector, DecisionVector> sbx_crossover(const DecisionVector& a,
                                                        const DecisionVector& b,
                                                        const OperatorParams& params,
                                                        const Bounds& bounds,
                                                        RngStream& rng) {
    if (a.encoding != Encoding::Real || b.encoding != Encoding::Real)
        throw std::invalid_argument("sbx requires real-coded parents");
    if (a.reals.size() != b.reals.size() || a.reals.size() != bounds.size())
        throw std::invalid_argument("sbx parent dimension mismatch");

    DecisionVector c1 = a;
    DecisionVector c2 = b;
    if (!rng.chance(params.p_crossover)) return {c1, c2};

    const double eta = params.eta_crossover;
    for (std::size_t i = 0; i < a.reals.size(); ++i) {
        if (!rng.chance(0.5)) continue;
        const double y1 = a.reals[i];
        const double y2 = b.reals[i];
        if (std::fabs(y1 - y2) < 1e-14) continue;

        const double u = rng.uniform();
        const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                     : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
        double v1 = 0.5 * ((1.0 + beta) * y1 + (1.0 - beta) * y2);
        double v2 = 0.5 * ((1.0 - beta) * y1 + (1.0 + beta) * y2);
        if (rng.chance(0.5)) std::swap(v1, v2);
        c1.reals[i] = clamp(v1, bounds.lower[i], bounds.upper[i]);
        c2.reals[i] = clamp(v2, bounds.lower[i], bounds.upper[i]);
    }
    return {c1, c2};
}

DecisionVector polynomial_mutation(const DecisionVector& x,
                                   double p_mutation,
                                   double eta_mutation,
                                   const Bounds& bounds,
                                   RngStream& rng) {
    if (x.encoding != Encoding::Real) throw std::invalid_argument("polynomial mutation requires real coding");
    if (x.reals.size() != bounds.size()) throw std::invalid_argument("mutation dimension mismatch");

    DecisionVector out = x;
    for (std::size_t i = 0; i < out.reals.size(); ++i) {
        if (!rng.chance(p_mutation)) continue;
        const double lo = bounds.lower[i];
        const double hi = bounds.upper[i];
        const double range = hi - lo;
        if (range <= 0.0) continue;

        const double y = out.reals[i];
        const double d1 = (y - lo) / range;
        const double d2 = (hi - y) / range;
        const double u = rng.uniform();
        const double exponent = 1.0 / (eta_mutation + 1.0);
        double delta;
        if (u < 0.5) {
            const double t = std::pow(1.0 - d1, eta_mutation + 1.0);
            delta = std::pow(2.0 * u + (1.0 - 2.0 * u) * t, exponent) - 1.0;
        } else {
            const double t = std::pow(1.0 - d2, eta_mutation + 1.0);
            delta = 1.0 - std::pow(2.0 * (1.0 - u) + 2.0 * (u - 0.5) * t, exponent);
        }
        out.reals[i] = clamp(y + delta * range, lo, hi);
    }
    return out;
}

std::pair<DecisionVector, DecisionVector> one_point_crossover(const DecisionVector& a,
                                                              const DecisionVector& b,
                                                              RngStream& rng) {
    if (a.encoding != Encoding::Binary || b.encoding != Encoding::Binary)
        throw std::invalid_argument("one-point crossover requires bit strings");
    if (a.bits.size() != b.bits.size()) throw std::invalid_argument("crossover length mismatch");
    if (a.bits.size() < 2) throw std::invalid_argument("one-point crossover needs at least two bits");

    const std::size_t cut = 1 + rng.index(a.bits.size() - 1);
    DecisionVector c1 = a;
    DecisionVector c2 = b;
    for (std::size_t i = cut; i < a.bits.size(); ++i) {
        c1.bits[i] = b.bits[i];
        c2.bits[i] = a.bits[i];
    }
    return {c1, c2};
}

DecisionVector bitwise_mutation(const DecisionVector& x, double p_mutation, RngStream& rng) {
    if (x.encoding != Encoding::Binary) throw std::invalid_argument("bitwise mutation requires bit strings");
    DecisionVector out = x;
    for (auto& bit : out.bits)
        if (rng.chance(p_mutation)) bit = bit ? 0 : 1;
    return out;
}

}   // namespace moea
