#pragma once

#include "mofsp/algorithms.hpp"

#include <chrono>
#include <set>

namespace mofsp::detail {

/// Per-run state: owns the evaluation counter and the random stream.
class RunContext {
public:
    RunContext(const Instance& inst, const AlgoConfig& cfg, Algorithm expected);

    void evaluate(Individual& ind) { ind.objectives = evaluator_(ind.genome); }
    void evaluate(std::vector<Individual>& members) {
        for (auto& ind : members) evaluate(ind);
    }
    bool budget_left() const { return evaluator_.count() < cfg_.max_evaluations; }

    const Instance& instance() const { return inst_; }
    const AlgoConfig& config() const { return cfg_; }
    RandomStream& rng() { return rng_; }

    /// Non-dominated subset of `members` as the run result.
    RunResult finish(std::span<const Individual> members) const;
    RunResult finish(ParetoFront front) const;

    /// Search space of one permutation: a single evaluation suffices.
    bool trivial() const { return inst_.n_jobs < 2; }
    RunResult finish_trivial();

private:
    const Instance& inst_;
    AlgoConfig cfg_;
    Evaluator evaluator_;
    RandomStream rng_;
    std::chrono::steady_clock::time_point start_;
};

struct RankCrowding {
    std::vector<std::size_t> rank;
    std::vector<double> crowding;

    /// Lower rank first, then larger crowding distance.
    bool better(std::size_t a, std::size_t b) const {
        if (rank[a] != rank[b]) return rank[a] < rank[b];
        return crowding[a] > crowding[b];
    }
};

RankCrowding rank_and_crowding(std::span<const ObjectiveVector> objs);

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> members);

/// Fills `count` offspring by binary tournament under `better`, PMX and swap.
/// Children repeating a parent or an earlier child are discarded before
/// evaluation; after 20 * count draws duplicates are accepted, so tiny search
/// spaces still terminate.
template <class Better>
std::vector<Individual> breed(std::span<const Individual> parents, std::size_t count, Better&& better,
                              RunContext& ctx) {
    std::vector<Individual> offspring;
    offspring.reserve(count);
    std::set<Permutation> seen;
    for (const auto& p : parents) seen.insert(p.genome);
    const auto& cfg = ctx.config();
    for (std::size_t draws = 0; offspring.size() < count; ++draws) {
        const bool strict = draws < 20 * count;
        const auto& a = parents[binary_tournament(parents.size(), better, ctx.rng())];
        const auto& b = parents[binary_tournament(parents.size(), better, ctx.rng())];
        auto [c1, c2] = make_offspring(a.genome, b.genome, cfg.crossover_prob, cfg.mutation_prob, ctx.rng());
        for (auto* c : {&c1, &c2}) {
            if (offspring.size() == count) break;
            if (!seen.insert(*c).second && strict) continue;
            offspring.push_back({std::move(*c), std::nullopt});
        }
    }
    return offspring;
}

}  // namespace mofsp::detail
