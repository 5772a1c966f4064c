#pragma once
// Independent reference computations for tests. None of these call the
// library's invariant code; they only share the point types.

#include <cmath>
#include <numbers>
#include <vector>

#include "qgi/diagram.hpp"
#include "qgi/geom4.hpp"

namespace oracles {

using qgi::Point2;
using qgi::Point3;
using qgi::Point4;

/// Gauss double integral (1/4pi) oint oint (r1 - r2) . (dr1 x dr2) / |r1 - r2|^3
/// by the midpoint rule with `sub` samples per edge.
inline double gauss_quadrature(const std::vector<Point3>& a, const std::vector<Point3>& b, int sub = 40) {
    auto samples = [sub](const std::vector<Point3>& v) {
        std::vector<std::pair<Point3, Point3>> out;  // (position, displacement)
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point3 p = v[i], q = v[(i + 1) % v.size()];
            const Point3 d = (q - p) * (1.0 / sub);
            for (int k = 0; k < sub; ++k) out.push_back({p + d * (k + 0.5), d});
        }
        return out;
    };
    const auto sa = samples(a), sb = samples(b);
    double sum = 0.0;
    for (const auto& [r1, d1] : sa) {
        for (const auto& [r2, d2] : sb) {
            const Point3 r = r1 - r2;
            const double n = qgi::norm(r);
            sum += qgi::dot(r, qgi::cross(d1, d2)) / (n * n * n);
        }
    }
    return sum / (4 * std::numbers::pi);
}

inline std::vector<Point3> spatial(const qgi::Loop& l) {
    std::vector<Point3> out;
    for (const auto& v : l.vertices) out.push_back({{v[1], v[2], v[3]}});
    return out;
}

struct PlanarHit {
    double s = 0, t = 0;  // edge parameters
};

/// Naive proper intersection of planar segments p0p1 and q0q1.
inline bool segments_cross(Point2 p0, Point2 p1, Point2 q0, Point2 q1, PlanarHit& h) {
    const Point2 r = p1 - p0, s = q1 - q0;
    const double den = r[0] * s[1] - r[1] * s[0];
    if (den == 0) return false;
    const Point2 w = q0 - p0;
    h.s = (w[0] * s[1] - w[1] * s[0]) / den;
    h.t = (w[0] * r[1] - w[1] * r[0]) / den;
    return h.s > 0 && h.s < 1 && h.t > 0 && h.t < 1;
}

/// Crossing data of two spatial polylines on the plane with normal e_k,
/// worked out from scratch: count and the sum of signs with the
/// "over x under > 0 is +1" rule.
struct CrossingTally {
    int count = 0;
    int sign_sum = 0;
    /// Sum of sign * lag where lag = +1 when the first loop's preimage is earlier.
    int lagged_sum = 0;
};

inline CrossingTally tally(const qgi::Loop& a, const qgi::Loop& b, int k) {
    // plane coordinates (x_{k+1}, x_{k+2}) with indices mod 3, depth x_k (1-based)
    auto pc = [k](const Point4& p) { return Point2{{p[1 + k % 3], p[1 + (k + 1) % 3]}}; };
    auto depth = [k](const Point4& p) { return p[k]; };
    CrossingTally t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Point4 a0 = a.vertex(i), a1 = a.vertex(i + 1);
        for (std::size_t j = 0; j < b.size(); ++j) {
            const Point4 b0 = b.vertex(j), b1 = b.vertex(j + 1);
            PlanarHit h;
            if (!segments_cross(pc(a0), pc(a1), pc(b0), pc(b1), h)) continue;
            const Point4 pa = a0 + (a1 - a0) * h.s, pb = b0 + (b1 - b0) * h.t;
            const Point2 ta = pc(a1) - pc(a0), tb = pc(b1) - pc(b0);
            const bool a_over = depth(pa) > depth(pb);
            const double c = a_over ? qgi::cross(ta, tb) : qgi::cross(tb, ta);
            const int sign = c > 0 ? 1 : -1;
            const int lag = pa[0] < pb[0] ? 1 : -1;
            ++t.count;
            t.sign_sum += sign;
            t.lagged_sum += sign * lag;
        }
    }
    return t;
}

}  // namespace oracles
