#pragma once

#include "mofsp/pareto_front.hpp"

#include <array>
#include <span>
#include <vector>

namespace mofsp {

using RealPoint = std::array<double, kObjectives>;

/// Reference point for hypervolume in normalized objective space.
inline constexpr RealPoint kHypervolumeReference{1.1, 1.1, 1.1};

/// Front used as the stand-in for the true Pareto front, with its bounds.
struct ReferenceFront {
    ParetoFront points;
    ObjectiveVector ideal;
    ObjectiveVector nadir;

    /// Throws std::invalid_argument on an empty front.
    static ReferenceFront from(ParetoFront front);
};

/// Maps each objective affinely so that ideal -> 0 and nadir -> 1. Zero-range
/// objectives map to 0; values outside [0, 1] are clamped with a warning.
std::vector<RealPoint> normalize(const ParetoFront& front, const ReferenceFront& ref);
std::vector<RealPoint> normalize(std::span<const ObjectiveVector> points, const ReferenceFront& ref);

/// Exact volume dominated by `points` (minimization) and bounded by `ref`.
/// Sweep over the third coordinate with an incrementally maintained 2-D
/// staircase, O(n log n). Points outside the reference box are dropped.
double hypervolume3(std::span<const RealPoint> points, const RealPoint& ref);

/// HV(front) / HV(reference front), both normalized by the reference bounds
/// and measured against kHypervolumeReference.
double relative_hypervolume(const ParetoFront& front, const ReferenceFront& ref);

struct SpreadTerms {
    /// Distance from each per-objective extreme of the reference front to
    /// the nearest front point.
    std::array<double, kObjectives> extreme_dists{};
    /// Distance from every front point to its nearest neighbor in the front.
    std::vector<double> neighbor_dists;
    double mean_neighbor = 0.0;
};

SpreadTerms spread_terms(const ParetoFront& front, const ReferenceFront& ref);

/// (sum of extreme distances + sum |mean - d_i|) / (sum of extreme distances
/// + |front| * mean), in normalized space. A single-point front scores 1.
double spread(const ParetoFront& front, const ReferenceFront& ref);

}  // namespace mofsp
