#include "run_support.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace mofsp {

namespace {

// T closest weight vectors to each weight vector, itself included.
std::vector<std::vector<std::size_t>> neighbourhoods(const std::vector<Direction>& weights, std::size_t t) {
    const std::size_t n = weights.size();
    std::vector<std::vector<std::size_t>> out(n);
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t o = 0; o < kObjectives; ++o) s += (weights[i][o] - weights[j][o]) * (weights[i][o] - weights[j][o]);
            d[j] = s;
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
        order.resize(t);
        out[i] = std::move(order);
    }
    return out;
}

}  // namespace

RunResult run_moead(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer) {
    detail::RunContext ctx(inst, cfg, Algorithm::moead);
    if (ctx.trivial()) return ctx.finish_trivial();

    const auto weights = moead_weight_vectors(cfg.population);
    const auto hood = neighbourhoods(weights, moead_neighborhood_size(cfg.population, cfg.neighborhood_frac));
    auto& rng = ctx.rng();

    auto pop = init_population(cfg.population, inst.n_jobs, rng).members;
    ctx.evaluate(pop);

    // Objectives differ in scale by orders of magnitude, so each weight is
    // divided by the archive's nadir - ideal range on that objective.
    Direction ideal;
    ideal.fill(std::numeric_limits<double>::infinity());
    Direction nadir{};
    Direction inv_range{1, 1, 1};
    ParetoFront archive;
    auto observe = [&](const Individual& ind) {
        const auto& f = ind.fitness();
        bool moved = false;
        for (std::size_t o = 0; o < kObjectives; ++o) {
            const auto v = static_cast<double>(f[o]);
            if (v < ideal[o]) {
                ideal[o] = v;
                moved = true;
            }
        }
        if (archive.insert(f, ind.genome)) {
            nadir.fill(-std::numeric_limits<double>::infinity());
            for (const auto& p : archive)
                for (std::size_t o = 0; o < kObjectives; ++o)
                    nadir[o] = std::max(nadir[o], static_cast<double>(p.objectives[o]));
            moved = true;
        }
        if (moved)
            for (std::size_t o = 0; o < kObjectives; ++o) inv_range[o] = 1.0 / std::max(nadir[o] - ideal[o], 1.0);
    };
    for (const auto& ind : pop) observe(ind);
    if (observer) observer(0, pop);

    for (std::size_t generation = 1; ctx.budget_left(); ++generation) {
        for (std::size_t i = 0; i < pop.size(); ++i) {
            const auto& b = hood[i];
            const std::size_t first = rng.below(b.size());
            std::size_t second = rng.below(b.size() - 1);
            if (second >= first) ++second;

            Individual child{pop[b[first]].genome, std::nullopt};
            if (rng.bernoulli(cfg.crossover_prob))
                child.genome = pmx_crossover(pop[b[first]].genome, pop[b[second]].genome, rng).first;
            if (rng.bernoulli(cfg.mutation_prob)) child.genome = swap_mutation(child.genome, rng);
            ctx.evaluate(child);
            observe(child);

            for (auto j : b) {
                Direction w;
                for (std::size_t o = 0; o < kObjectives; ++o) w[o] = weights[j][o] * inv_range[o];
                if (tchebycheff(child.fitness(), w, ideal) < tchebycheff(pop[j].fitness(), w, ideal))
                    pop[j] = child;
            }
        }
        if (observer) observer(generation, pop);
    }
    return ctx.finish(std::move(archive));
}

}  // namespace mofsp
