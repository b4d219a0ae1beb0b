#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace moea {

/// Objectives are always stored in minimization convention. Problems that
/// maximize negate at the evaluation boundary and reports un-negate.
using ObjectiveVector = std::vector<double>;

enum class Encoding { Real, Binary };

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t size() const { return lower.size(); }

    static Bounds unit(std::size_t d) {
        return Bounds{std::vector<double>(d, 0.0), std::vector<double>(d, 1.0)};
    }
};

struct DecisionVector {
    Encoding encoding = Encoding::Real;
    std::vector<double> reals;        // used when encoding == Real
    std::vector<std::uint8_t> bits;   // used when encoding == Binary

    std::size_t size() const { return encoding == Encoding::Real ? reals.size() : bits.size(); }

    bool operator==(const DecisionVector&) const = default;
};

struct Individual {
    DecisionVector decision;
    ObjectiveVector objectives;
    double constraint_violation = 0.0;   // sum of positive constraint excesses

    bool feasible() const { return constraint_violation <= 0.0; }
};

/// Ordered container for one generation. `capacity` is the configured
/// population size; environmental selection restores members.size() to it.
struct Population {
    std::vector<Individual> members;
    std::size_t capacity = 0;

    std::size_t size() const { return members.size(); }
    bool full() const { return members.size() == capacity; }
};

/// Deterministic random stream. Draws come straight from mt19937_64 output
/// (no std:: distributions, whose mappings differ between standard library
/// implementations), so identical seeds give identical sequences anywhere.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// True with probability p.
    bool chance(double p) { return uniform() < p; }

    /// Uniform index in [0, n). Rejection sampling keeps it unbiased.
    std::size_t index(std::size_t n) {
        const std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

/// splitmix64 step; used to derive sub-stream seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id);

/// The per-run random streams, forked from one master seed in a fixed order.
/// Every operator category owns a stream so the draw sequences of one
/// operator cannot shift another's when configurations differ.
struct RunRngs {
    RngStream init;
    RngStream tournament;
    RngStream crossover;
    RngStream mutation;
    RngStream niching;

    explicit RunRngs(std::uint64_t master)
        : init(mix_seed(master, 1)),
          tournament(mix_seed(master, 2)),
          crossover(mix_seed(master, 3)),
          mutation(mix_seed(master, 4)),
          niching(mix_seed(master, 5)) {}
};

enum class AlgorithmId { Nsga3, ANsga3, Nsga3Ur };

std::string to_string(AlgorithmId id);
AlgorithmId parse_algorithm(const std::string& name);   // throws std::invalid_argument

/// How the spreading index sums squared coordinates: Literal keeps the raw
/// double sum, Rms divides by the population size before the square root.
enum class SiScaling { Literal, Rms };

std::string to_string(SiScaling s);
SiScaling parse_si_scaling(const std::string& name);

/// Test hook: pin the adaptation mode instead of deciding from the
/// spreading-index test. None means normal behavior.
enum class ForcedMode { None, Static, Adaptive };

struct OperatorParams {
    double eta_crossover = 20.0;
    double eta_mutation = 20.0;
    double p_crossover = 1.0;
    double p_mutation = 0.0;   // <= 0 means the 1/num_variables default
};

struct RunConfig {
    std::string problem = "dtlz2";
    int num_objectives = 3;
    std::size_t population_size = 120;
    std::uint64_t max_evaluations = 60000;
    std::uint64_t seed = 1;
    AlgorithmId algorithm = AlgorithmId::Nsga3;

    double start_fraction = 0.2;     // decision generation = floor(start_fraction * (budget / N))
    double si_divisor = 4.0;
    SiScaling si_scaling = SiScaling::Literal;
    ForcedMode forced_mode = ForcedMode::None;

    OperatorParams operators;

    std::uint64_t mokp_instance_seed = 0;   // 0 means the shipped default instance
    std::string wrp_front_path;             // empty means the default lookup

    /// Total generation count implied by the evaluation budget; the initial
    /// population consumes one generation's worth of evaluations.
    std::uint64_t generation_budget() const { return max_evaluations / population_size; }

    void validate() const;   // throws std::invalid_argument on bad settings
};

struct EvaluationCounter {
    std::uint64_t count = 0;
};

}   // namespace moea
