#include "mofsp/metrics.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace mofsp {

ReferenceFront ReferenceFront::from(ParetoFront front) {
    if (front.empty()) throw std::invalid_argument("reference front is empty");
    ReferenceFront ref;
    ref.ideal = front.points().front().objectives;
    ref.nadir = ref.ideal;
    for (const auto& p : front) {
        for (std::size_t o = 0; o < kObjectives; ++o) {
            ref.ideal[o] = std::min(ref.ideal[o], p.objectives[o]);
            ref.nadir[o] = std::max(ref.nadir[o], p.objectives[o]);
        }
    }
    ref.points = std::move(front);
    return ref;
}

std::vector<RealPoint> normalize(std::span<const ObjectiveVector> points, const ReferenceFront& ref) {
    std::vector<RealPoint> out;
    out.reserve(points.size());
    std::size_t clamped = 0;
    bool degenerate = true;
    for (std::size_t o = 0; o < kObjectives; ++o)
        if (ref.nadir[o] > ref.ideal[o]) degenerate = false;
    if (degenerate) spdlog::warn("degenerate reference front: every objective has zero range");

    for (const auto& v : points) {
        RealPoint r{};
        for (std::size_t o = 0; o < kObjectives; ++o) {
            const auto range = ref.nadir[o] - ref.ideal[o];
            if (range <= 0) continue;
            double x = static_cast<double>(v[o] - ref.ideal[o]) / static_cast<double>(range);
            if (x < 0.0 || x > 1.0) {
                x = std::clamp(x, 0.0, 1.0);
                ++clamped;
            }
            r[o] = x;
        }
        out.push_back(r);
    }
    if (clamped > 0) spdlog::warn("normalization clamped {} coordinate(s) into [0, 1]", clamped);
    return out;
}

std::vector<RealPoint> normalize(const ParetoFront& front, const ReferenceFront& ref) {
    const auto objs = front.objectives();
    return normalize(objs, ref);
}

namespace {

// Non-dominated 2-D staircase (x ascending, y descending) with its area
// against (rx, ry).
class Staircase {
public:
    Staircase(double rx, double ry) : rx_(rx), ry_(ry) {}

    void insert(double x, double y) {
        auto after = steps_.upper_bound(x);
        double height = ry_;
        if (after != steps_.begin()) {
            height = std::prev(after)->second;
            if (height <= y) return;  // dominated
        }
        double prev_x = x;
        auto it = steps_.lower_bound(x);
        while (it != steps_.end() && height > y) {
            area_ += (it->first - prev_x) * (height - y);
            height = std::min(height, it->second);
            prev_x = it->first;
            if (it->second >= y)
                it = steps_.erase(it);
            else
                break;
        }
        if (height > y) area_ += (rx_ - prev_x) * (height - y);
        steps_[x] = y;
    }

    double area() const noexcept { return area_; }

private:
    double rx_;
    double ry_;
    double area_ = 0.0;
    std::map<double, double> steps_;
};

}  // namespace

double hypervolume3(std::span<const RealPoint> points, const RealPoint& ref) {
    std::vector<RealPoint> inside;
    inside.reserve(points.size());
    std::size_t dropped = 0;
    for (const auto& p : points) {
        if (p[0] > ref[0] || p[1] > ref[1] || p[2] > ref[2]) {
            ++dropped;
            continue;
        }
        if (p[0] < ref[0] && p[1] < ref[1] && p[2] < ref[2]) inside.push_back(p);
    }
    if (dropped > 0) spdlog::warn("hypervolume: dropped {} point(s) beyond the reference point", dropped);
    if (inside.empty()) return 0.0;

    std::sort(inside.begin(), inside.end(), [](const RealPoint& a, const RealPoint& b) { return a[2] < b[2]; });
    Staircase stairs(ref[0], ref[1]);
    double volume = 0.0;
    for (std::size_t i = 0; i < inside.size(); ++i) {
        stairs.insert(inside[i][0], inside[i][1]);
        const double next_z = i + 1 < inside.size() ? inside[i + 1][2] : ref[2];
        volume += stairs.area() * (next_z - inside[i][2]);
    }
    return volume;
}

double relative_hypervolume(const ParetoFront& front, const ReferenceFront& ref) {
    const auto ref_points = normalize(ref.points, ref);
    const double ref_hv = hypervolume3(ref_points, kHypervolumeReference);
    if (!(ref_hv > 0.0)) throw std::domain_error("reference front has zero hypervolume");
    const auto pts = normalize(front, ref);
    return hypervolume3(pts, kHypervolumeReference) / ref_hv;
}

namespace {

double distance(const RealPoint& a, const RealPoint& b) {
    double s = 0.0;
    for (std::size_t o = 0; o < kObjectives; ++o) s += (a[o] - b[o]) * (a[o] - b[o]);
    return std::sqrt(s);
}

}  // namespace

SpreadTerms spread_terms(const ParetoFront& front, const ReferenceFront& ref) {
    if (front.empty()) throw std::invalid_argument("spread of an empty front");
    const auto pts = normalize(front, ref);
    const auto ref_objs = ref.points.objectives();

    SpreadTerms terms;
    for (std::size_t o = 0; o < kObjectives; ++o) {
        // points are in lexicographic order, so the first minimizer wins ties
        std::size_t best = 0;
        for (std::size_t i = 1; i < ref_objs.size(); ++i)
            if (ref_objs[i][o] < ref_objs[best][o]) best = i;
        const auto extreme = normalize(std::span(&ref_objs[best], 1), ref).front();
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) nearest = std::min(nearest, distance(extreme, p));
        terms.extreme_dists[o] = nearest;
    }

    if (pts.size() >= 2) {
        terms.neighbor_dists.resize(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double nearest = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (j != i) nearest = std::min(nearest, distance(pts[i], pts[j]));
            terms.neighbor_dists[i] = nearest;
        }
        terms.mean_neighbor = std::accumulate(terms.neighbor_dists.begin(), terms.neighbor_dists.end(), 0.0) /
                              static_cast<double>(pts.size());
    }
    return terms;
}

double spread(const ParetoFront& front, const ReferenceFront& ref) {
    if (front.empty()) throw std::invalid_argument("spread of an empty front");
    if (front.size() == 1) return 1.0;
    const auto terms = spread_terms(front, ref);
    const double extremes = std::accumulate(terms.extreme_dists.begin(), terms.extreme_dists.end(), 0.0);
    double deviation = 0.0;
    for (double d : terms.neighbor_dists) deviation += std::abs(terms.mean_neighbor - d);
    const double denominator = extremes + static_cast<double>(front.size()) * terms.mean_neighbor;
    if (denominator == 0.0) return 0.0;
    return (extremes + deviation) / denominator;
}

}  // namespace mofsp
