#include "qgi/predicates.hpp"

#include <algorithm>
#include <cmath>

#include "qgi/distance.hpp"

namespace qgi {

SegmentTriangleHit intersect_segment_triangle(const Point3& p0, const Point3& p1, const Point3& a,
                                              const Point3& b, const Point3& c, double tol) {
    using Kind = SegmentTriangleHit::Kind;
    SegmentTriangleHit hit;
    const Point3 n = cross(b - a, c - a);
    const double nn = norm(n);
    const Point3 d = p1 - p0;
    const double len = norm(d);
    if (nn == 0.0 || len == 0.0) {
        if (segment_triangle_distance(p0, p1, a, b, c) <= tol) hit.kind = Kind::Tangent;
        return hit;
    }
    const double s0 = dot(n, p0 - a) / nn;
    const double s1 = dot(n, p1 - a) / nn;
    hit.normal_dot = dot(n, d);

    if ((s0 > tol && s1 > tol) || (s0 < -tol && s1 < -tol)) return hit;

    if (std::abs(s0) <= tol || std::abs(s1) <= tol) {
        if (point_triangle_distance(p0, a, b, c) <= tol || point_triangle_distance(p1, a, b, c) <= tol)
            hit.kind = Kind::EndpointOnTriangle;
        else if (std::abs(s0) <= tol && std::abs(s1) <= tol && segment_triangle_distance(p0, p1, a, b, c) <= tol)
            hit.kind = Kind::Tangent;
        return hit;
    }

    hit.t = s0 / (s0 - s1);
    const Point3 x = p0 + d * hit.t;
    const double inv = 1.0 / (nn * nn);
    hit.w0 = dot(n, cross(b - x, c - x)) * inv;
    hit.w1 = dot(n, cross(c - x, a - x)) * inv;
    hit.w2 = 1.0 - hit.w0 - hit.w1;

    // Signed distance from x to each edge line, measured inside the plane.
    const double h0 = hit.w0 * nn / norm(c - b);
    const double h1 = hit.w1 * nn / norm(a - c);
    const double h2 = hit.w2 * nn / norm(b - a);
    const double hmin = std::min({h0, h1, h2});
    if (hmin < -tol) return hit;

    const bool tangent = std::abs(hit.normal_dot) <= tol * nn * len;
    if (tangent) {
        hit.kind = Kind::Tangent;
    } else if (hmin <= tol) {
        hit.kind = Kind::EdgeGraze;
        hit.edge = hmin == h0 ? 0 : (hmin == h1 ? 1 : 2);
    } else {
        hit.kind = Kind::Proper;
    }
    return hit;
}

}  // namespace qgi
