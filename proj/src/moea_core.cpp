#include "mofsp/moea_core.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>

namespace mofsp {

std::vector<ObjectiveVector> Population::objectives() const {
    std::vector<ObjectiveVector> out;
    out.reserve(members.size());
    for (const auto& ind : members) out.push_back(ind.fitness());
    return out;
}

Permutation random_permutation(int n_jobs, RandomStream& rng) {
    auto perm = Permutation::identity(n_jobs);
    for (std::size_t i = perm.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i));
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

Population init_population(std::size_t capacity, int n_jobs, RandomStream& rng) {
    Population pop;
    pop.capacity = capacity;
    pop.members.reserve(capacity);
    for (std::size_t i = 0; i < capacity; ++i) pop.members.push_back({random_permutation(n_jobs, rng), std::nullopt});
    return pop;
}

CutPoints draw_cut_points(std::size_t n, RandomStream& rng) {
    std::size_t x = rng.below(n + 1);
    std::size_t y = rng.below(n + 1);
    while (y == x) y = rng.below(n + 1);
    return {std::min(x, y), std::max(x, y)};
}

namespace {

Permutation pmx_child(const Permutation& keep, const Permutation& fill, CutPoints cuts) {
    const std::size_t n = keep.size();
    std::vector<std::size_t> pos_in_keep(n);
    for (std::size_t i = 0; i < n; ++i) pos_in_keep[keep[i]] = i;

    Permutation child(std::vector<int>(n, -1));
    for (std::size_t i = cuts.lo; i < cuts.hi; ++i) child[i] = keep[i];
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= cuts.lo && i < cuts.hi) continue;
        int v = fill[i];
        for (std::size_t k = pos_in_keep[v]; k >= cuts.lo && k < cuts.hi; k = pos_in_keep[v]) v = fill[k];
        child[i] = v;
    }
    assert(child.is_valid());
    return child;
}

}  // namespace

std::pair<Permutation, Permutation> pmx_crossover(const Permutation& a, const Permutation& b, CutPoints cuts) {
    if (a.size() != b.size())
        throw std::invalid_argument(fmt::format("PMX parents differ in length ({} vs {})", a.size(), b.size()));
    if (cuts.lo >= cuts.hi || cuts.hi > a.size()) throw std::invalid_argument("PMX cut points out of range");
    return {pmx_child(a, b, cuts), pmx_child(b, a, cuts)};
}

std::pair<Permutation, Permutation> pmx_crossover(const Permutation& a, const Permutation& b, RandomStream& rng) {
    if (a.size() != b.size())
        throw std::invalid_argument(fmt::format("PMX parents differ in length ({} vs {})", a.size(), b.size()));
    if (a.size() < 2) throw std::invalid_argument("PMX needs at least two jobs");
    return pmx_crossover(a, b, draw_cut_points(a.size(), rng));
}

Permutation swap_positions(Permutation p, std::size_t i, std::size_t j) {
    if (i == j || i >= p.size() || j >= p.size()) throw std::invalid_argument("swap needs two distinct positions");
    std::swap(p[i], p[j]);
    return p;
}

Permutation swap_mutation(const Permutation& p, RandomStream& rng) {
    if (p.size() < 2) throw std::invalid_argument("swap mutation needs at least two jobs");
    const std::size_t i = rng.below(p.size());
    std::size_t j = rng.below(p.size() - 1);
    if (j >= i) ++j;
    return swap_positions(p, i, j);
}

std::pair<Permutation, Permutation> make_offspring(const Permutation& a, const Permutation& b, double crossover_prob,
                                                   double mutation_prob, RandomStream& rng) {
    if (a.size() < 2) return {a, b};
    auto children = rng.bernoulli(crossover_prob) ? pmx_crossover(a, b, rng) : std::pair{a, b};
    if (rng.bernoulli(mutation_prob)) children.first = swap_mutation(children.first, rng);
    if (rng.bernoulli(mutation_prob)) children.second = swap_mutation(children.second, rng);
    return children;
}

Fronts fast_nondominated_sort(std::span<const ObjectiveVector> points) {
    const std::size_t n = points.size();
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    Fronts fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (dominates(points[p], points[q])) {
                dominated_by_me[p].push_back(q);
                ++domination_count[q];
            } else if (dominates(points[q], points[p])) {
                dominated_by_me[q].push_back(p);
                ++domination_count[p];
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p)
        if (domination_count[p] == 0) current.push_back(p);
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto p : current)
            for (auto q : dominated_by_me[p])
                if (--domination_count[q] == 0) next.push_back(q);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

Fronts fast_nondominated_sort(const Population& pop) {
    const auto objs = pop.objectives();
    return fast_nondominated_sort(objs);
}

std::vector<std::size_t> front_ranks(const Fronts& fronts, std::size_t n) {
    std::vector<std::size_t> rank(n, 0);
    for (std::size_t f = 0; f < fronts.size(); ++f)
        for (auto i : fronts[f]) rank[i] = f;
    return rank;
}

std::vector<double> crowding_distance(std::span<const ObjectiveVector> front) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    const std::size_t n = front.size();
    if (n <= 2) return std::vector<double>(n, inf);

    std::vector<double> distance(n, 0.0);
    std::vector<std::size_t> order(n);
    for (std::size_t o = 0; o < kObjectives; ++o) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][o] < front[b][o]; });
        const auto lo = front[order.front()][o];
        const auto hi = front[order.back()][o];
        if (hi == lo) continue;
        const double range = static_cast<double>(hi - lo);
        distance[order.front()] = inf;
        distance[order.back()] = inf;
        for (std::size_t k = 1; k + 1 < n; ++k) {
            const double gap = static_cast<double>(front[order[k + 1]][o] - front[order[k - 1]][o]);
            distance[order[k]] += gap / range;
        }
    }
    return distance;
}

}  // namespace mofsp
