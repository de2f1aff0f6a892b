#pragma once

// Independent reference computations and random generators for tests. Nothing
// here calls into the engine's numerical code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "aquanim/geometry.hpp"

namespace oracle {

inline double smoothstep(double t) { return 3.0 * t * t - 2.0 * t * t * t; }

inline double area(const aquanim::Rect& r) { return (r.x_max - r.x_min) * (r.y_max - r.y_min); }

inline double intersection(const aquanim::Rect& a, const aquanim::Rect& b) {
    const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    return w > 0 && h > 0 ? w * h : 0.0;
}

inline std::vector<double> merged_edges(const std::vector<double>& a, const std::vector<double>& b) {
    std::set<double> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    std::vector<double> out;
    for (double v : s) {
        if (out.empty() || v - out.back() > 1e-12) out.push_back(v);
    }
    return out;
}

/// Density of a step function given by (edges, heights) at x.
inline double step_at(const std::vector<double>& edges, const std::vector<double>& heights, double x) {
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (x >= edges[i] && x < edges[i + 1]) return heights[i];
    }
    return heights.back();
}

/// Probability quantities by long-double arithmetic, indexed [pred][obs].
struct Table {
    std::vector<std::vector<long double>> joint;
    std::vector<long double> pred;
    std::vector<long double> obs;
    std::vector<std::vector<long double>> obs_given_pred;
};

inline Table table(const std::vector<std::vector<std::int64_t>>& counts) {
    const std::size_t k = counts.size();
    long double total = 0;
    for (const auto& r : counts)
        for (auto c : r) total += c;
    Table t;
    t.joint.assign(k, std::vector<long double>(k, 0));
    t.pred.assign(k, 0);
    t.obs.assign(k, 0);
    t.obs_given_pred.assign(k, std::vector<long double>(k, 0));
    for (std::size_t p = 0; p < k; ++p) {
        long double row = 0;
        for (std::size_t o = 0; o < k; ++o) row += counts[p][o];
        for (std::size_t o = 0; o < k; ++o) {
            t.joint[p][o] = counts[p][o] / total;
            t.pred[p] += counts[p][o] / total;
            t.obs[o] += counts[p][o] / total;
            t.obs_given_pred[p][o] = row > 0 ? counts[p][o] / row : 0;
        }
    }
    return t;
}

inline const std::vector<std::vector<std::int64_t>>& table1_counts() {
    static const std::vector<std::vector<std::int64_t>> c{
        {1458, 48, 78}, {205, 102, 144}, {85, 34, 1666}};
    return c;
}

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    std::size_t index(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }
    bool coin() { return index(0, 1) == 1; }

    aquanim::Rect rect(double span = 10.0, double min_extent = 0.05) {
        const double x = uniform(-span, span);
        const double y = uniform(-span, span);
        return {x, x + uniform(min_extent, span), y, y + uniform(min_extent, span)};
    }

    /// A random rect and a second one of equal area with some edges kept.
    std::pair<aquanim::Rect, aquanim::Rect> equal_area_pair() {
        const aquanim::Rect a = rect(5.0, 0.2);
        const double area = (a.x_max - a.x_min) * (a.y_max - a.y_min);
        const double w = uniform(0.2, 6.0);
        const double h = area / w;
        aquanim::Rect b;
        switch (index(0, 3)) {
            case 0: b = {a.x_min, a.x_min + w, a.y_min, a.y_min + h}; break;        // lower-left fixed
            case 1: b = {a.x_max - w, a.x_max, a.y_max - h, a.y_max}; break;        // upper-right fixed
            case 2: {                                                              // centered
                const double cx = 0.5 * (a.x_min + a.x_max);
                const double cy = 0.5 * (a.y_min + a.y_max);
                b = {cx - w / 2, cx + w / 2, cy - h / 2, cy + h / 2};
                break;
            }
            default: {
                const double x = uniform(-5, 5);
                const double y = uniform(-5, 5);
                b = {x, x + w, y, y + h};
            }
        }
        return {a, b};
    }

    /// Random positive weights summing to 1.
    std::vector<double> simplex(std::size_t n) {
        std::vector<double> v(n);
        double s = 0;
        for (auto& x : v) s += (x = uniform(0.05, 1.0));
        for (auto& x : v) x /= s;
        return v;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
