#include "run_support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mofsp {

namespace {

using Vec = std::array<double, kObjectives>;

double det3(const std::array<Vec, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// Intercepts of the hyperplane through the extreme points (rows of `e`) with
// the axes; falls back to the per-objective maxima when the plane is
// degenerate or cuts an axis at a non-positive value.
Vec intercepts(const std::array<Vec, 3>& e, const Vec& worst) {
    Vec out = worst;
    const double d = det3(e);
    bool ok = std::abs(d) > 1e-12;
    if (ok) {
        // solve e * b = 1 by Cramer's rule; intercept_o = 1 / b_o
        for (std::size_t o = 0; o < kObjectives && ok; ++o) {
            auto m = e;
            for (std::size_t r = 0; r < 3; ++r) m[r][o] = 1.0;
            const double b = det3(m) / d;
            if (!(b > 1e-12)) {
                ok = false;
                break;
            }
            out[o] = 1.0 / b;
        }
    }
    if (!ok) out = worst;
    for (std::size_t o = 0; o < kObjectives; ++o)
        if (!(out[o] > 1e-10)) out[o] = worst[o] > 1e-10 ? worst[o] : 1.0;
    return out;
}

struct Association {
    std::size_t direction = 0;
    double distance = 0.0;
};

class NichingSelector {
public:
    explicit NichingSelector(std::size_t population)
        : directions_(nsga3_reference_directions(population)) {
        for (const auto& w : directions_) {
            double n2 = 0.0;
            for (double v : w) n2 += v * v;
            norms2_.push_back(n2);
        }
    }

    std::size_t direction_count() const { return directions_.size(); }

    std::vector<std::size_t> select(std::span<const ObjectiveVector> objs, std::size_t target, RandomStream& rng) const {
        std::vector<std::size_t> chosen;
        std::vector<std::size_t> candidates;  // members of the front that overflows
        std::vector<std::size_t> considered;  // every member up to and including it
        for (const auto& front : fast_nondominated_sort(objs)) {
            considered.insert(considered.end(), front.begin(), front.end());
            if (chosen.size() + front.size() <= target) {
                chosen.insert(chosen.end(), front.begin(), front.end());
                if (chosen.size() == target) return chosen;
                continue;
            }
            candidates = front;
            break;
        }

        const auto assoc = associate(objs, considered);
        std::vector<std::size_t> niche_count(directions_.size(), 0);
        for (std::size_t k = 0; k < chosen.size(); ++k) ++niche_count[assoc[k].direction];

        // per direction: candidate positions (into `considered`) not yet picked
        std::vector<std::vector<std::size_t>> pending(directions_.size());
        for (std::size_t k = chosen.size(); k < considered.size(); ++k) pending[assoc[k].direction].push_back(k);

        std::vector<bool> excluded(directions_.size(), false);
        std::vector<std::size_t> least;
        while (chosen.size() < target) {
            std::size_t min_count = std::numeric_limits<std::size_t>::max();
            least.clear();
            for (std::size_t j = 0; j < directions_.size(); ++j) {
                if (excluded[j]) continue;
                if (niche_count[j] < min_count) {
                    min_count = niche_count[j];
                    least.clear();
                }
                if (niche_count[j] == min_count) least.push_back(j);
            }
            const std::size_t j = least[rng.below(least.size())];
            auto& members = pending[j];
            if (members.empty()) {
                excluded[j] = true;
                continue;
            }
            std::size_t pick = 0;
            if (niche_count[j] == 0) {
                for (std::size_t k = 1; k < members.size(); ++k)
                    if (assoc[members[k]].distance < assoc[members[pick]].distance) pick = k;
            } else {
                pick = rng.below(members.size());
            }
            chosen.push_back(considered[members[pick]]);
            members.erase(members.begin() + static_cast<std::ptrdiff_t>(pick));
            ++niche_count[j];
        }
        return chosen;
    }

private:
    // Normalizes the considered members and attaches each to the reference
    // line at the smallest perpendicular distance.
    std::vector<Association> associate(std::span<const ObjectiveVector> objs,
                                       const std::vector<std::size_t>& considered) const {
        Vec ideal;
        ideal.fill(std::numeric_limits<double>::infinity());
        Vec worst{};
        for (auto i : considered)
            for (std::size_t o = 0; o < kObjectives; ++o) ideal[o] = std::min(ideal[o], static_cast<double>(objs[i][o]));

        std::vector<Vec> translated;
        translated.reserve(considered.size());
        for (auto i : considered) {
            Vec t;
            for (std::size_t o = 0; o < kObjectives; ++o) {
                t[o] = static_cast<double>(objs[i][o]) - ideal[o];
                worst[o] = std::max(worst[o], t[o]);
            }
            translated.push_back(t);
        }

        std::array<Vec, 3> extremes{};
        for (std::size_t axis = 0; axis < kObjectives; ++axis) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& t : translated) {
                double asf = 0.0;
                for (std::size_t o = 0; o < kObjectives; ++o) asf = std::max(asf, t[o] / (o == axis ? 1.0 : 1e-6));
                if (asf < best) {
                    best = asf;
                    extremes[axis] = t;
                }
            }
        }
        const Vec scale = intercepts(extremes, worst);

        std::vector<Association> out;
        out.reserve(translated.size());
        for (const auto& t : translated) {
            Vec f;
            for (std::size_t o = 0; o < kObjectives; ++o) f[o] = t[o] / scale[o];
            Association best{0, std::numeric_limits<double>::infinity()};
            for (std::size_t j = 0; j < directions_.size(); ++j) {
                const auto& w = directions_[j];
                const double proj = (f[0] * w[0] + f[1] * w[1] + f[2] * w[2]) / norms2_[j];
                double d2 = 0.0;
                for (std::size_t o = 0; o < kObjectives; ++o) d2 += (f[o] - proj * w[o]) * (f[o] - proj * w[o]);
                if (d2 < best.distance) best = {j, d2};
            }
            best.distance = std::sqrt(best.distance);
            out.push_back(best);
        }
        return out;
    }

    std::vector<Direction> directions_;
    std::vector<double> norms2_;
};

}  // namespace

RunResult run_nsga3(const Instance& inst, const AlgoConfig& cfg, const GenerationObserver& observer) {
    detail::RunContext ctx(inst, cfg, Algorithm::nsga3);
    if (ctx.trivial()) return ctx.finish_trivial();

    const NichingSelector selector(cfg.population);
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
        const auto chosen = selector.select(detail::objectives_of(merged), cfg.population, ctx.rng());
        pop.clear();
        pop.reserve(cfg.population);
        for (auto i : chosen) pop.push_back(std::move(merged[i]));

        rc = detail::rank_and_crowding(detail::objectives_of(pop));
        if (observer) observer(generation, pop);
    }
    return ctx.finish(pop);
}

}  // namespace mofsp
