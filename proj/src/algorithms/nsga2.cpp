#include "run_support.hpp"

#include <algorithm>
#include <numeric>

namespace mofsp {

namespace {

// Whole fronts in rank order; the front that overflows is cut by descending
// crowding distance.
std::vector<std::size_t> select_by_rank_and_crowding(std::span<const ObjectiveVector> objs, std::size_t target) {
    std::vector<std::size_t> chosen;
    chosen.reserve(target);
    for (const auto& front : fast_nondominated_sort(objs)) {
        if (chosen.size() + front.size() <= target) {
            chosen.insert(chosen.end(), front.begin(), front.end());
            if (chosen.size() == target) break;
            continue;
        }
        std::vector<ObjectiveVector> members;
        members.reserve(front.size());
        for (auto i : front) members.push_back(objs[i]);
        const auto cd = crowding_distance(members);
        std::vector<std::size_t> order(front.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
        for (std::size_t k = 0; chosen.size() < target; ++k) chosen.push_back(front[order[k]]);
        break;
    }
    return chosen;
}

}  // namespace

RunResult run_nsga2(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer) {
    detail::RunContext ctx(inst, cfg, Algorithm::nsga2);
    if (ctx.trivial()) return ctx.finish_trivial();

    auto pop = init_population(cfg.population, inst.n_jobs, ctx.rng()).members;
    ctx.evaluate(pop);
    auto rc = detail::rank_and_crowding(detail::objectives_of(pop));
    if (observer) observer(0, pop);

    for (std::size_t generation = 1; ctx.budget_left(); ++generation) {
        auto better = [&rc](std::size_t a, std::size_t b) { return rc.better(a, b); };
        auto offspring = detail::breed(pop, cfg.population, better, ctx);
        ctx.evaluate(offspring);

        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        const auto chosen = select_by_rank_and_crowding(detail::objectives_of(merged), cfg.population);
        pop.clear();
        pop.reserve(cfg.population);
        for (auto i : chosen) pop.push_back(std::move(merged[i]));

        rc = detail::rank_and_crowding(detail::objectives_of(pop));
        if (observer) observer(generation, pop);
    }
    return ctx.finish(pop);
}

}  // namespace mofsp
