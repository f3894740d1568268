#pragma once

#include "mofsp/random.hpp"
#include "mofsp/schedule.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mofsp {

struct Individual {
    Permutation genome;
    std::optional<ObjectiveVector> objectives;

    const ObjectiveVector& fitness() const {
        if (!objectives) throw std::logic_error("individual has not been evaluated");
        return *objectives;
    }
};

struct Population {
    std::vector<Individual> members;
    std::size_t capacity = 0;

    std::size_t size() const noexcept { return members.size(); }
    std::vector<ObjectiveVector> objectives() const;
};

/// Fisher-Yates shuffle of 0..n-1; every permutation has probability 1/n!.
Permutation random_permutation(int n_jobs, RandomStream& rng);

/// `capacity` independent uniform permutations, unevaluated.
Population init_population(std::size_t capacity, int n_jobs, RandomStream& rng);

struct CutPoints {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

/// Uniform pair 0 <= lo < hi <= n.
CutPoints draw_cut_points(std::size_t n, RandomStream& rng);

/// PMX with the given cuts. Child one keeps a[lo, hi) and child two keeps
/// b[lo, hi); conflicting values outside the segment are resolved through the
/// positional mapping between the parents' segments.
std::pair<Permutation, Permutation> pmx_crossover(const Permutation& a, const Permutation& b, CutPoints cuts);
std::pair<Permutation, Permutation> pmx_crossover(const Permutation& a, const Permutation& b, RandomStream& rng);

/// Exchanges the values at positions i and j (i != j).
Permutation swap_positions(Permutation p, std::size_t i, std::size_t j);
/// Exchanges the values at two distinct uniformly chosen positions.
Permutation swap_mutation(const Permutation& p, RandomStream& rng);

/// PMX on the pair with probability `crossover_prob` (otherwise copies), then
/// one swap on each child with probability `mutation_prob`. Genomes shorter
/// than two jobs pass through unchanged.
std::pair<Permutation, Permutation> make_offspring(const Permutation& a, const Permutation& b, double crossover_prob,
                                                   double mutation_prob, RandomStream& rng);

using Fronts = std::vector<std::vector<std::size_t>>;

/// Deb's fast non-dominated sort. Indices inside each front are ascending.
Fronts fast_nondominated_sort(std::span<const ObjectiveVector> points);
Fronts fast_nondominated_sort(const Population& pop);

/// Front rank of every point, from a sort result.
std::vector<std::size_t> front_ranks(const Fronts& fronts, std::size_t n);

/// NSGA-II crowding distance of the points of one front.
std::vector<double> crowding_distance(std::span<const ObjectiveVector> front);

/// Two uniform picks with replacement from [0, n); returns the second only
/// if better(second, first). Throws on n == 0.
template <class Better>
std::size_t binary_tournament(std::size_t n, Better&& better, RandomStream& rng) {
    if (n == 0) throw std::invalid_argument("tournament on an empty population");
    const std::size_t first = rng.below(n);
    const std::size_t second = rng.below(n);
    return better(second, first) ? second : first;
}

template <class Better>
const Individual& binary_tournament(const Population& pop, Better&& better, RandomStream& rng) {
    return pop.members[binary_tournament(pop.size(), std::forward<Better>(better), rng)];
}

}  // namespace mofsp
