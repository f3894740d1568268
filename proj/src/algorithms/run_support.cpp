#include "run_support.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mofsp {

std::string_view to_string(Algorithm a) {
    switch (a) {
    case Algorithm::nsga2: return "NSGA2";
    case Algorithm::nsga3: return "NSGA3";
    case Algorithm::spea2: return "SPEA2";
    case Algorithm::moead: return "MOEAD";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
    std::string key;
    for (char c : name)
        if (c != '-' && c != '/' && c != '_') key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (key == "NSGA2" || key == "NSGAII") return Algorithm::nsga2;
    if (key == "NSGA3" || key == "NSGAIII") return Algorithm::nsga3;
    if (key == "SPEA2") return Algorithm::spea2;
    if (key == "MOEAD") return Algorithm::moead;
    return std::nullopt;
}

AlgoConfig AlgoConfig::preset(Algorithm a, std::uint64_t seed) {
    AlgoConfig cfg;
    cfg.algorithm = a;
    cfg.seed = seed;
    cfg.mutation_prob = 0.1;
    switch (a) {
    case Algorithm::moead:
        cfg.population = 50;
        cfg.crossover_prob = 0.5;
        break;
    case Algorithm::nsga2:
        cfg.population = 100;
        cfg.crossover_prob = 0.7;
        break;
    case Algorithm::nsga3:
        cfg.population = 50;
        cfg.crossover_prob = 0.7;
        break;
    case Algorithm::spea2:
        cfg.population = 100;
        cfg.crossover_prob = 0.9;
        break;
    }
    return cfg;
}

void AlgoConfig::validate() const {
    auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!in_unit(crossover_prob) || !in_unit(mutation_prob))
        throw std::invalid_argument("crossover and mutation probabilities must lie in [0, 1]");
    if (population < 4 || population % 2 != 0)
        throw std::invalid_argument(fmt::format("population must be even and at least 4, got {}", population));
    if (max_evaluations < static_cast<std::int64_t>(population))
        throw std::invalid_argument("max_evaluations must be at least the population size");
    if (!(neighborhood_frac > 0.0 && neighborhood_frac <= 1.0))
        throw std::invalid_argument("neighborhood_frac must lie in (0, 1]");
}

RunResult run_algorithm(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer) {
    switch (cfg.algorithm) {
    case Algorithm::nsga2: return run_nsga2(inst, cfg, observer);
    case Algorithm::nsga3: return run_nsga3(inst, cfg, observer);
    case Algorithm::spea2: return run_spea2(inst, cfg, observer);
    case Algorithm::moead: return run_moead(inst, cfg, observer);
    }
    throw std::invalid_argument("unknown algorithm");
}

namespace detail {

RunContext::RunContext(const Instance& inst, const AlgoConfig& cfg, Algorithm expected)
    : inst_(inst),
      cfg_(cfg),
      evaluator_(inst),
      rng_(RandomStream::derive(cfg.seed, StreamTag::search)),
      start_(std::chrono::steady_clock::now()) {
    if (cfg.algorithm != expected)
        throw std::invalid_argument(fmt::format("configuration is for {}, not {}", to_string(cfg.algorithm),
                                                to_string(expected)));
    cfg.validate();
    inst.validate();
}

RunResult RunContext::finish(ParetoFront front) const {
    RunResult r;
    r.front = std::move(front);
    r.evaluations_used = evaluator_.count();
    r.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
    r.seed = cfg_.seed;
    r.algorithm = cfg_.algorithm;
    r.instance_name = inst_.name;
    return r;
}

RunResult RunContext::finish(std::span<const Individual> members) const {
    ParetoFront front;
    for (const auto& ind : members) front.insert(ind.fitness(), ind.genome);
    return finish(std::move(front));
}

RunResult RunContext::finish_trivial() {
    Individual only{Permutation::identity(inst_.n_jobs), std::nullopt};
    evaluate(only);
    return finish(std::span(&only, 1));
}

RankCrowding rank_and_crowding(std::span<const ObjectiveVector> objs) {
    RankCrowding rc;
    const auto fronts = fast_nondominated_sort(objs);
    rc.rank = front_ranks(fronts, objs.size());
    rc.crowding.assign(objs.size(), 0.0);
    std::vector<ObjectiveVector> members;
    for (const auto& front : fronts) {
        members.clear();
        for (auto i : front) members.push_back(objs[i]);
        const auto cd = crowding_distance(members);
        for (std::size_t k = 0; k < front.size(); ++k) rc.crowding[front[k]] = cd[k];
    }
    return rc;
}

std::vector<ObjectiveVector> objectives_of(std::span<const Individual> members) {
    std::vector<ObjectiveVector> out;
    out.reserve(members.size());
    for (const auto& ind : members) out.push_back(ind.fitness());
    return out;
}

}  // namespace detail
}  // namespace mofsp
