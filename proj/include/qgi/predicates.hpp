#pragma once

#include "qgi/vec.hpp"

namespace qgi {

/// Outcome of intersecting a closed segment with a closed triangle in R^3.
struct SegmentTriangleHit {
    enum class Kind {
        None,
        /// Transverse crossing strictly inside both simplices.
        Proper,
        /// Segment nearly parallel to the triangle's plane where they meet.
        Tangent,
        /// A segment endpoint lies on the triangle.
        EndpointOnTriangle,
        /// Crossing within tol of a triangle edge; `edge` is the index of the
        /// vertex opposite that edge.
        EdgeGraze,
    };

    Kind kind = Kind::None;
    /// Segment parameter of the crossing.
    double t = 0.0;
    /// Barycentric weights of the triangle vertices at the crossing.
    double w0 = 0.0, w1 = 0.0, w2 = 0.0;
    /// Unnormalised triangle normal (b - a) x (c - a) dotted with p1 - p0.
    double normal_dot = 0.0;
    int edge = -1;
};

SegmentTriangleHit intersect_segment_triangle(const Point3& p0, const Point3& p1, const Point3& a,
                                              const Point3& b, const Point3& c, double tol);

}  // namespace qgi
