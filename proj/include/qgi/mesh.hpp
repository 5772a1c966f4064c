#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qgi/geom4.hpp"
#include "qgi/validation.hpp"
#include "qgi/vec.hpp"

namespace qgi {

/// Counter-clockwise (right-handed) vertex triple.
using Triangle = std::array<std::size_t, 3>;

/// Oriented triangulated surface in R x R^3, with or without boundary.
struct Surface4 {
    std::string id;
    std::vector<Point4> vertices;
    std::vector<Triangle> triangles;
};

/// Closed oriented triangle mesh bounding a compact region of the time-zero slice.
struct Region3 {
    std::string id;
    std::vector<Point3> vertices;
    std::vector<Triangle> triangles;
};

inline TauExtent tau_extent(const Surface4& s) { return tau_extent(s.vertices); }

/// Directed edges used by exactly one triangle, oriented as in that triangle.
std::vector<std::array<std::size_t, 2>> boundary_edges(std::span<const Triangle> triangles);

bool is_closed(const Surface4& s);

/// Boundary components as loops, oriented by the surface orientation.
/// Ids are "<surface id>/boundary<k>".
std::vector<Loop> boundary_loops(const Surface4& s);

/// Triangle index sets of the edge-connected components, in order of first triangle.
std::vector<std::vector<std::size_t>> triangle_components(std::span<const Triangle> triangles);

std::vector<Point3> spatial_vertices(const Surface4& s);

/// Manifold, consistently oriented, finite, and with an embedded spatial shadow.
ValidationReport validate_surface(const Surface4& s, double tol);

/// Closed, consistently oriented and embedded.
ValidationReport validate_region(const Region3& r, double tol);

enum class Containment { Inside, Outside, OnBoundary };
std::string to_string(Containment c);

/// Ray-parity containment in the solid bounded by a closed triangle set.
/// OnBoundary when p is within tol of a triangle. Retries up to 8 generic
/// directions; throws Error(DegenerateRay) if all of them graze the mesh.
Containment point_in_mesh(const Point3& p, std::span<const Point3> vertices,
                          std::span<const Triangle> triangles, double tol);

/// Minimum distance from p to the triangles.
double distance_to_mesh(const Point3& p, std::span<const Point3> vertices, std::span<const Triangle> triangles);

}  // namespace qgi
