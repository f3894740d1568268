#include "run_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mofsp {

namespace {

// Pairwise Euclidean distances after scaling each objective by its range
// over the point set; zero-range objectives are ignored.
std::vector<double> scaled_distances(std::span<const ObjectiveVector> points) {
    const std::size_t n = points.size();
    std::array<double, kObjectives> inv_range{};
    for (std::size_t o = 0; o < kObjectives; ++o) {
        auto mn = std::numeric_limits<std::int64_t>::max();
        auto mx = std::numeric_limits<std::int64_t>::min();
        for (const auto& p : points) {
            mn = std::min(mn, p[o]);
            mx = std::max(mx, p[o]);
        }
        inv_range[o] = mx > mn ? 1.0 / static_cast<double>(mx - mn) : 0.0;
    }
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t o = 0; o < kObjectives; ++o) {
                const double diff = static_cast<double>(points[i][o] - points[j][o]) * inv_range[o];
                s += diff * diff;
            }
            d[i * n + j] = d[j * n + i] = std::sqrt(s);
        }
    }
    return d;
}

// Iteratively drops the member whose sorted neighbour-distance list is
// lexicographically smallest until `target` remain.
std::vector<std::size_t> truncate(std::span<const ObjectiveVector> objs, std::vector<std::size_t> members,
                                  std::size_t target) {
    const std::size_t m = members.size();
    std::vector<ObjectiveVector> sub;
    sub.reserve(m);
    for (auto i : members) sub.push_back(objs[i]);
    const auto dist = scaled_distances(sub);

    // For each member, the distinct distances to the others in ascending
    // order, with how many alive members sit at each distance. Comparing
    // these run-length lists is the same as comparing the full sorted
    // distance lists, but stays cheap when many members coincide.
    struct Runs {
        std::vector<double> dist;
        std::vector<std::size_t> alive;
        std::vector<std::size_t> run_of;  // member -> run index
        std::size_t head = 0;             // first run with alive members
    };
    std::vector<Runs> runs(m);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; ++i) {
        order.clear();
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) order.push_back(j);
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return dist[i * m + a] < dist[i * m + b]; });
        auto& r = runs[i];
        r.run_of.assign(m, 0);
        for (auto j : order) {
            const double d = dist[i * m + j];
            if (r.dist.empty() || r.dist.back() != d) {
                r.dist.push_back(d);
                r.alive.push_back(0);
            }
            ++r.alive.back();
            r.run_of[j] = r.dist.size() - 1;
        }
    }

    // true if i's alive-distance list is lexicographically smaller than j's
    auto closer = [&](std::size_t i, std::size_t j) {
        const auto& ri = runs[i];
        const auto& rj = runs[j];
        std::size_t a = ri.head, b = rj.head;
        while (true) {
            while (a < ri.dist.size() && ri.alive[a] == 0) ++a;
            while (b < rj.dist.size() && rj.alive[b] == 0) ++b;
            if (a >= ri.dist.size() || b >= rj.dist.size()) return false;
            if (ri.dist[a] != rj.dist[b]) return ri.dist[a] < rj.dist[b];
            // at equal distance, more members there means the next entry of
            // the other list is already larger
            if (ri.alive[a] != rj.alive[b]) return ri.alive[a] > rj.alive[b];
            ++a;
            ++b;
        }
    };

    std::vector<bool> alive(m, true);
    for (std::size_t remaining = m; remaining > target; --remaining) {
        std::size_t victim = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (!alive[i]) continue;
            auto& r = runs[i];
            while (r.head < r.dist.size() && r.alive[r.head] == 0) ++r.head;
            if (victim == m || closer(i, victim)) victim = i;
        }
        alive[victim] = false;
        for (std::size_t i = 0; i < m; ++i)
            if (i != victim) --runs[i].alive[runs[i].run_of[victim]];
    }

    std::vector<std::size_t> kept;
    kept.reserve(target);
    for (std::size_t i = 0; i < m; ++i)
        if (alive[i]) kept.push_back(members[i]);
    return kept;
}

std::vector<std::size_t> environmental_selection(std::span<const ObjectiveVector> objs,
                                                 const std::vector<double>& fitness, std::size_t archive_size) {
    std::vector<std::size_t> nondominated;
    std::vector<std::size_t> dominated;
    for (std::size_t i = 0; i < objs.size(); ++i) (fitness[i] < 1.0 ? nondominated : dominated).push_back(i);

    if (nondominated.size() > archive_size) return truncate(objs, std::move(nondominated), archive_size);
    std::stable_sort(dominated.begin(), dominated.end(),
                     [&](std::size_t a, std::size_t b) { return fitness[a] < fitness[b]; });
    for (std::size_t k = 0; nondominated.size() < archive_size && k < dominated.size(); ++k)
        nondominated.push_back(dominated[k]);
    return nondominated;
}

}  // namespace

std::vector<double> spea2_fitness(std::span<const ObjectiveVector> points, std::size_t k) {
    const std::size_t n = points.size();
    std::vector<std::size_t> strength(n, 0);
    std::vector<std::vector<std::size_t>> dominators(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && dominates(points[i], points[j])) {
                ++strength[i];
                dominators[j].push_back(i);
            }
        }
    }

    const auto dist = scaled_distances(points);
    const std::size_t kth = n > 1 ? std::min(k, n - 1) : 0;
    std::vector<double> fitness(n, 0.0);
    std::vector<double> row;
    for (std::size_t i = 0; i < n; ++i) {
        double raw = 0.0;
        for (auto d : dominators[i]) raw += static_cast<double>(strength[d]);
        double sigma = 0.0;
        if (kth > 0) {
            row.clear();
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) row.push_back(dist[i * n + j]);
            std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(kth - 1), row.end());
            sigma = row[kth - 1];
        }
        fitness[i] = raw + 1.0 / (sigma + 2.0);
    }
    return fitness;
}

RunResult run_spea2(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer) {
    detail::RunContext ctx(inst, cfg, Algorithm::spea2);
    if (ctx.trivial()) return ctx.finish_trivial();

    const std::size_t archive_size = cfg.population;
    const auto k = static_cast<std::size_t>(std::llround(std::sqrt(2.0 * static_cast<double>(cfg.population))));

    auto pop = init_population(cfg.population, inst.n_jobs, ctx.rng()).members;
    ctx.evaluate(pop);
    std::vector<Individual> archive;

    for (std::size_t generation = 0;; ++generation) {
        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(archive.begin()), std::make_move_iterator(archive.end()));
        const auto objs = detail::objectives_of(merged);
        const auto fitness = spea2_fitness(objs, k);
        const auto kept = environmental_selection(objs, fitness, archive_size);

        archive.clear();
        std::vector<double> archive_fitness;
        archive.reserve(kept.size());
        for (auto i : kept) {
            archive.push_back(std::move(merged[i]));
            archive_fitness.push_back(fitness[i]);
        }
        if (observer) observer(generation, archive);
        if (!ctx.budget_left()) break;

        auto better = [&archive_fitness](std::size_t a, std::size_t b) { return archive_fitness[a] < archive_fitness[b]; };
        pop = detail::breed(archive, cfg.population, better, ctx);
        ctx.evaluate(pop);
    }
    return ctx.finish(archive);
}

}  // namespace mofsp
