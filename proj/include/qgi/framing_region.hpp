#pragma once

#include <span>
#include <string>
#include <vector>

#include "qgi/geom4.hpp"
#include "qgi/mesh.hpp"

namespace qgi {

/// Half-twist marker on the spatial shadow of a loop.
struct Node {
    std::string loop_id;
    std::size_t edge = 0;
    double u = 0.5;
    int sign = 1;

    friend bool operator==(const Node&, const Node&) = default;
};

struct FramedHyperlink {
    Hyperlink hyperlink;
    std::vector<Node> nodes;
};

/// Spatial location of a node. Throws InvalidInput for an unknown loop or edge.
Point3 node_position(const Node& n, const Hyperlink& h);

/// Containment in the region, tested per connected component of its mesh:
/// Inside when inside any component.
Containment point_in_region(const Point3& p, const Region3& r, double tol = kDefaultTolerance);

/// Mixed signs on a loop, odd node counts, malformed nodes, nodes on a region
/// boundary, and loops meeting a region inside its time slice.
ValidationReport validate_frame(const FramedHyperlink& f, std::span<const Region3> regions,
                                double tol = kDefaultTolerance);

/// Number of nodes inside the region. Throws Error(OnBoundary) for a node on
/// the boundary.
int confinement_number(const FramedHyperlink& f, const Region3& r, double tol = kDefaultTolerance);

}  // namespace qgi
