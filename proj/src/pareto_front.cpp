#include "mofsp/pareto_front.hpp"

#include <algorithm>

namespace mofsp {

bool ParetoFront::insert(const ObjectiveVector& objectives, const Permutation& permutation) {
    auto pos = std::lower_bound(points_.begin(), points_.end(), objectives,
                                [](const FrontPoint& p, const ObjectiveVector& v) { return p.objectives < v; });
    if (pos != points_.end() && pos->objectives == objectives) {
        if (permutation < pos->permutation) {
            pos->permutation = permutation;
            return true;
        }
        return false;
    }
    // a dominator is lexicographically smaller, a dominated point larger
    for (auto it = points_.begin(); it != pos; ++it)
        if (dominates(it->objectives, objectives)) return false;
    const auto at = pos - points_.begin();
    auto dominated_end = std::remove_if(pos, points_.end(),
                                        [&](const FrontPoint& p) { return dominates(objectives, p.objectives); });
    points_.erase(dominated_end, points_.end());
    points_.insert(points_.begin() + at, FrontPoint{objectives, permutation});
    return true;
}

ParetoFront ParetoFront::from_points(std::span<const FrontPoint> points) {
    ParetoFront front;
    for (const auto& p : points) front.insert(p);
    return front;
}

std::vector<ObjectiveVector> ParetoFront::objectives() const {
    std::vector<ObjectiveVector> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.objectives);
    return out;
}

bool ParetoFront::covers(const ObjectiveVector& v) const {
    return std::any_of(points_.begin(), points_.end(),
                       [&](const FrontPoint& p) { return p.objectives == v || dominates(p.objectives, v); });
}

ParetoFront consolidate(std::span<const ParetoFront> fronts) {
    ParetoFront out;
    for (const auto& f : fronts)
        for (const auto& p : f) out.insert(p);
    return out;
}

}  // namespace mofsp
