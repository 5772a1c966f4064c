#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qgi/validation.hpp"
#include "qgi/vec.hpp"

namespace qgi {

inline constexpr double kDefaultTolerance = 1e-9;

/// Selects pi_0 (drop time) or pi_k (drop spatial x_k, keep time).
enum class ProjectionAxis { A0 = 0, A1 = 1, A2 = 2, A3 = 3 };

/// Coordinate plane Sigma_k of R^3 with normal e_k.
enum class Plane { S1 = 1, S2 = 2, S3 = 3 };

inline constexpr ProjectionAxis kAllAxes[] = {ProjectionAxis::A0, ProjectionAxis::A1,
                                              ProjectionAxis::A2, ProjectionAxis::A3};
inline constexpr Plane kAllPlanes[] = {Plane::S1, Plane::S2, Plane::S3};

inline int index_of(ProjectionAxis a) { return static_cast<int>(a); }
inline int index_of(Plane p) { return static_cast<int>(p); }
std::string to_string(ProjectionAxis a);
std::string to_string(Plane p);

/// A0 -> (x1,x2,x3); A1 -> (x0,x2,x3); A2 -> (x0,x3,x1); A3 -> (x0,x1,x2).
Point3 project(const Point4& p, ProjectionAxis axis);

/// Inverse of project() with the dropped coordinate set to zero.
Point4 embed(const Point3& q, ProjectionAxis axis);

/// Spatial part (x1,x2,x3), i.e. project(p, A0).
inline Point3 spatial(const Point4& p) { return {{p[1], p[2], p[3]}}; }

/// Coordinates of a spatial point on Sigma_k, kept in the cyclic order
/// (x_{k+1}, x_{k+2}) so that (plane basis, e_k) is right-handed.
Point2 plane_coords(const Point3& x, Plane plane);

/// The coordinate x_k that Sigma_k forgets; larger means closer to the viewer.
double plane_depth(const Point3& x, Plane plane);

/// Oriented closed PL curve in R x R^3. The last vertex joins the first.
struct Loop {
    std::string id;
    std::vector<Point4> vertices;

    std::size_t size() const { return vertices.size(); }
    const Point4& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
    /// Point at parameter u in [0,1] along edge i (vertex i -> vertex i+1).
    Point4 point_at(std::size_t edge, double u) const { return lerp(vertex(edge), vertex(edge + 1), u); }
    /// Same as point_at for a global parameter s in [0, size()).
    Point4 point_at(double s) const;
};

struct Hyperlink {
    std::vector<Loop> loops;
    bool validated = false;

    bool empty() const { return loops.empty(); }
};

/// Closed range of the time coordinate over an object.
struct TauExtent {
    double lo = 0.0;
    double hi = 0.0;
};

TauExtent tau_extent(std::span<const Point4> points);
inline TauExtent tau_extent(const Loop& loop) { return tau_extent(loop.vertices); }

enum class TimeOrder { Before, After, Incomparable };
std::string to_string(TimeOrder o);

TimeOrder time_order(const TauExtent& a, const TauExtent& b);
inline TimeOrder time_order(const Loop& a, const Loop& b) {
    return time_order(tau_extent(a), tau_extent(b));
}

/// Structural problems of a single loop: vertex count, finiteness,
/// coincident consecutive vertices.
ValidationReport check_loop_structure(const Loop& loop, double tol);

/// Checks the time-like conditions on the union of the given loops: T1 (the
/// spatial projection is an embedded link) and T2 (distinct times at every
/// crossing of each Sigma_k diagram). Degenerate diagrams are reported as
/// NotGenericPosition.
ValidationReport validate_timelike(std::span<const Loop> loops, double tol);
inline ValidationReport validate_timelike(const Hyperlink& h, double tol) {
    return validate_timelike(std::span<const Loop>(h.loops), tol);
}

using OrderMatrix = std::vector<std::vector<TimeOrder>>;

/// Matter hyperlink (first) paired with a geometric hyperlink (second).
struct TimeOrderedPair {
    Hyperlink matter;
    Hyperlink geometric;
    /// order[u][v] relates matter loop u to geometric loop v.
    OrderMatrix order;

    TimeOrderedPair() = default;
    TimeOrderedPair(Hyperlink matter_, Hyperlink geometric_);
};

OrderMatrix order_matrix(const Hyperlink& matter, const Hyperlink& geometric);

bool all_comparable(const OrderMatrix& m);

/// Union time-like and every (matter, geometric) pair comparable.
ValidationReport validate_time_ordered_pair(const TimeOrderedPair& pair, double tol);

}  // namespace qgi
