#include "moea/core.hpp"

#include <stdexcept>

namespace moea {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream_id) {
    // splitmix64 (Steele, Lea, Flood): well-mixed 64-bit stream seeds even
    // for small consecutive inputs.
    std::uint64_t z = seed + stream_id * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string to_string(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Nsga3: return "nsga3";
        case AlgorithmId::ANsga3: return "a-nsga3";
        case AlgorithmId::Nsga3Ur: return "nsga3-ur";
    }
    return "?";
}

AlgorithmId parse_algorithm(const std::string& name) {
    if (name == "nsga3" || name == "nsga-iii") return AlgorithmId::Nsga3;
    if (name == "a-nsga3" || name == "a-nsga-iii" || name == "ansga3") return AlgorithmId::ANsga3;
    if (name == "nsga3-ur" || name == "nsga-iii-ur" || name == "ur") return AlgorithmId::Nsga3Ur;
    throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(SiScaling s) {
    return s == SiScaling::Literal ? "literal" : "rms";
}

SiScaling parse_si_scaling(const std::string& name) {
    if (name == "literal") return SiScaling::Literal;
    if (name == "rms") return SiScaling::Rms;
    throw std::invalid_argument("unknown si scaling: " + name);
}

void RunConfig::validate() const {
    if (num_objectives < 2) throw std::invalid_argument("num_objectives must be >= 2");
    if (population_size == 0) throw std::invalid_argument("population_size must be positive");
    if (max_evaluations < population_size)
        throw std::invalid_argument("max_evaluations below one population of evaluations");
    if (start_fraction <= 0.0 || start_fraction >= 1.0) {
        if (forced_mode == ForcedMode::None)
            throw std::invalid_argument("start_fraction must lie in (0, 1)");
    }
    if (si_divisor <= 0.0) throw std::invalid_argument("si_divisor must be positive");
    if (operators.eta_crossover <= 0.0 || operators.eta_mutation <= 0.0)
        throw std::invalid_argument("distribution indices must be positive");
    if (operators.p_crossover < 0.0 || operators.p_crossover > 1.0)
        throw std::invalid_argument("p_crossover must lie in [0, 1]");
}

}   // namespace moea
