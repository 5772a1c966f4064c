#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qgi/geom4.hpp"
#include "qgi/vec.hpp"

namespace qgi {

/// Oriented closed polyline in R^3 (last vertex joins the first).
struct Polyline3 {
    std::string id;
    std::vector<Point3> vertices;
};

/// Spatial shadow pi_0 of a loop.
Polyline3 spatial_projection(const Loop& loop);

/// Location on a diagram strand: edge `edge` at parameter u in (0,1).
struct StrandRef {
    std::size_t strand = 0;
    std::string loop_id;
    std::size_t edge = 0;
    double u = 0.0;
};

struct Crossing {
    Plane plane = Plane::S3;
    Point2 point;
    StrandRef over;
    StrandRef under;
    int eps = 0;
    bool inter_component = false;
};

struct Diagram {
    Plane plane = Plane::S3;
    /// Projected strands in input order.
    std::vector<Polyline3> link;
    std::vector<std::vector<Point2>> strands;
    std::vector<Crossing> crossings;
};

/// Projects the link onto `plane` and resolves every transverse double point.
/// Throws Error(DegenerateDiagram) on tangencies, triple points, crossings at
/// projected vertices, zero-length projected edges and over/under ties.
Diagram build_diagram(std::span<const Polyline3> link, Plane plane, double tol);

/// +1 when the planar cross product over x under is positive.
/// Throws Error(ParallelTangents) when |over x under| <= tol.
int crossing_sign(const Point2& over_tangent, const Point2& under_tangent, double tol = kDefaultTolerance);

/// Sum of crossing signs over all crossings between the two components.
/// This is twice the classical linking number.
int lk_link(const Polyline3& a, const Polyline3& b, Plane plane, double tol = kDefaultTolerance);

/// Classical linking number from the exact solid angle subtended by each
/// pair of segments. Independent of any projection. Throws
/// Error(NumericalInstability) when a segment pair is within tol of touching
/// or the total is not close to an integer.
int gauss_lk_oracle(const Polyline3& a, const Polyline3& b, double tol = kDefaultTolerance);

/// Real-valued Gauss sum before rounding.
double gauss_lk_value(const Polyline3& a, const Polyline3& b, double tol = kDefaultTolerance);

}  // namespace qgi
