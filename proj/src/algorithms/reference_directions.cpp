#include "mofsp/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mofsp {

namespace {

std::size_t lattice_size(int divisions) {
    const auto h = static_cast<std::size_t>(divisions);
    return (h + 1) * (h + 2) / 2;
}

double squared_distance(const Direction& a, const Direction& b) {
    double s = 0.0;
    for (std::size_t o = 0; o < kObjectives; ++o) s += (a[o] - b[o]) * (a[o] - b[o]);
    return s;
}

}  // namespace

std::vector<Direction> das_dennis(int divisions) {
    if (divisions < 1) throw std::invalid_argument("Das-Dennis lattice needs at least one division");
    std::vector<Direction> out;
    out.reserve(lattice_size(divisions));
    const double h = divisions;
    for (int i = 0; i <= divisions; ++i)
        for (int j = 0; j <= divisions - i; ++j) out.push_back({i / h, j / h, (divisions - i - j) / h});
    return out;
}

int das_dennis_divisions_at_most(std::size_t count) {
    if (count < lattice_size(1)) throw std::invalid_argument("need room for at least three reference directions");
    int h = 1;
    while (lattice_size(h + 1) <= count) ++h;
    return h;
}

std::vector<Direction> nsga3_reference_directions(std::size_t population) {
    return das_dennis(das_dennis_divisions_at_most(population));
}

std::vector<Direction> moead_weight_vectors(std::size_t population) {
    if (population < 3) throw std::invalid_argument("MOEA/D needs at least three subproblems");
    int h = 1;
    while (lattice_size(h) < population) ++h;
    const auto lattice = das_dennis(h);

    std::vector<std::size_t> chosen;
    std::vector<double> nearest(lattice.size(), std::numeric_limits<double>::infinity());
    std::vector<bool> taken(lattice.size(), false);
    auto take = [&](std::size_t idx) {
        taken[idx] = true;
        chosen.push_back(idx);
        for (std::size_t k = 0; k < lattice.size(); ++k)
            nearest[k] = std::min(nearest[k], squared_distance(lattice[k], lattice[idx]));
    };
    for (std::size_t k = 0; k < lattice.size(); ++k)
        if (std::any_of(lattice[k].begin(), lattice[k].end(), [](double v) { return v == 1.0; })) take(k);
    while (chosen.size() < population) {
        std::size_t best = lattice.size();
        for (std::size_t k = 0; k < lattice.size(); ++k)
            if (!taken[k] && (best == lattice.size() || nearest[k] > nearest[best])) best = k;
        take(best);
    }
    std::sort(chosen.begin(), chosen.end());

    std::vector<Direction> out;
    out.reserve(population);
    for (auto idx : chosen) {
        auto w = lattice[idx];
        for (auto& v : w)
            if (v == 0.0) v = 1e-6;
        out.push_back(w);
    }
    return out;
}

std::size_t moead_neighborhood_size(std::size_t population, double frac) {
    const auto t = static_cast<std::size_t>(std::llround(frac * static_cast<double>(population)));
    return std::min(population, std::max<std::size_t>(2, t));
}

double tchebycheff(const ObjectiveVector& f, const Direction& weight, const Direction& ideal) {
    double g = 0.0;
    for (std::size_t o = 0; o < kObjectives; ++o)
        g = std::max(g, weight[o] * std::abs(static_cast<double>(f[o]) - ideal[o]));
    return g;
}

}  // namespace mofsp
