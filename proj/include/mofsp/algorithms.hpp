#pragma once

#include "mofsp/instance.hpp"
#include "mofsp/moea_core.hpp"
#include "mofsp/pareto_front.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mofsp {

enum class Algorithm { nsga2 = 0, nsga3 = 1, spea2 = 2, moead = 3 };

inline constexpr std::array<Algorithm, 4> kAllAlgorithms{Algorithm::nsga2, Algorithm::nsga3, Algorithm::spea2,
                                                         Algorithm::moead};

/// "NSGA2", "NSGA3", "SPEA2", "MOEAD".
std::string_view to_string(Algorithm a);
/// Accepts the names above, case-insensitive, with an optional "-" or "/"
/// ("NSGA-II" and "MOEA/D" are accepted too).
std::optional<Algorithm> parse_algorithm(std::string_view name);

inline constexpr std::int64_t kDefaultEvaluationBudget = 150'000;
inline constexpr double kDefaultNeighborhoodFraction = 0.03;

struct AlgoConfig {
    Algorithm algorithm = Algorithm::nsga2;
    std::size_t population = 100;
    double crossover_prob = 0.7;
    double mutation_prob = 0.1;
    std::int64_t max_evaluations = kDefaultEvaluationBudget;
    double neighborhood_frac = kDefaultNeighborhoodFraction;
    std::uint64_t seed = 0;

    /// Tuned settings: MOEA/D 50/0.5/0.1, NSGA-II 100/0.7/0.1,
    /// NSGA-III 50/0.7/0.1, SPEA2 100/0.9/0.1 (#P/p_c/p_m), 150,000 evaluations.
    static AlgoConfig preset(Algorithm a, std::uint64_t seed = 0);

    /// Throws std::invalid_argument.
    void validate() const;

    bool operator==(const AlgoConfig&) const = default;
};

struct RunResult {
    ParetoFront front;
    std::int64_t evaluations_used = 0;
    std::chrono::nanoseconds wall_time{0};
    std::uint64_t seed = 0;
    Algorithm algorithm = Algorithm::nsga2;
    std::string instance_name;
};

/// Called after initialization (generation 0) and after every generation
/// with the retained population or archive.
using GenerationObserver = std::function<void(std::size_t generation, std::span<const Individual> retained)>;

RunResult run_nsga2(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer = {});
RunResult run_nsga3(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer = {});
RunResult run_spea2(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer = {});
RunResult run_moead(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer = {});

/// Dispatches on cfg.algorithm.
RunResult run_algorithm(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer = {});

using Direction = std::array<double, kObjectives>;

/// Simplex lattice {k / divisions : sum = 1} on three objectives;
/// C(divisions + 2, 2) points.
std::vector<Direction> das_dennis(int divisions);

/// Largest division count whose lattice has at most `count` points.
int das_dennis_divisions_at_most(std::size_t count);

/// NSGA-III reference directions for a population size.
std::vector<Direction> nsga3_reference_directions(std::size_t population);

/// Exactly `population` MOEA/D weight vectors: a farthest-point subset of the
/// smallest Das-Dennis lattice with at least that many points, zero
/// components replaced by 1e-6.
std::vector<Direction> moead_weight_vectors(std::size_t population);

/// max(2, round(frac * population)).
std::size_t moead_neighborhood_size(std::size_t population, double frac);

/// max_o weight_o * |f_o - ideal_o|.
double tchebycheff(const ObjectiveVector& f, const Direction& weight, const Direction& ideal);

/// SPEA2 fitness of every point: raw fitness (sum of the strengths of its
/// dominators) plus density 1 / (sigma_k + 2), sigma_k being the distance to
/// the k-th nearest neighbour in range-normalized objective space.
std::vector<double> spea2_fitness(std::span<const ObjectiveVector> points, std::size_t k);

}  // namespace mofsp
