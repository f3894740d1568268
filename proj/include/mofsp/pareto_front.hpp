#pragma once

#include "mofsp/schedule.hpp"

#include <span>
#include <vector>

namespace mofsp {

struct FrontPoint {
    ObjectiveVector objectives;
    Permutation permutation;

    bool operator==(const FrontPoint&) const = default;
};

/// Mutually non-dominated points, unique on the objective vector and kept in
/// lexicographic objective order. When two permutations reach the same
/// objective vector the lexicographically smaller permutation is kept, which
/// makes the content independent of insertion order.
class ParetoFront {
public:
    ParetoFront() = default;

    /// Archive insertion. Returns true if the front changed.
    bool insert(const ObjectiveVector& objectives, const Permutation& permutation);
    bool insert(const FrontPoint& point) { return insert(point.objectives, point.permutation); }

    /// Dominance-filtered, deduplicated front of arbitrary points.
    static ParetoFront from_points(std::span<const FrontPoint> points);

    const std::vector<FrontPoint>& points() const noexcept { return points_; }
    std::vector<ObjectiveVector> objectives() const;
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    /// True if some member dominates or equals v.
    bool covers(const ObjectiveVector& v) const;

    bool operator==(const ParetoFront&) const = default;

private:
    std::vector<FrontPoint> points_;
};

/// Union of the fronts followed by a dominance filter.
ParetoFront consolidate(std::span<const ParetoFront> fronts);

}  // namespace mofsp
