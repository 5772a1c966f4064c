#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgi/geom4.hpp"
#include "qgi/mesh.hpp"

namespace qgi {

/// Image of p in the 3-space of `axis`, with coordinates ordered so that the
/// standard orientation matches the axis volume form:
/// A0 (x1,x2,x3), A1 (x0,x3,x2), A2 (x0,x1,x3), A3 (x0,x2,x1).
Point3 oriented_image(const Point4& p, ProjectionAxis axis);

/// The coordinate `axis` forgets: x0 for A0, x_k for A_k.
inline double dropped_coordinate(const Point4& p, ProjectionAxis axis) { return p[index_of(axis)]; }

struct Piercing {
    ProjectionAxis axis = ProjectionAxis::A0;
    /// Intersection point in the oriented image space.
    Point3 point;
    std::string loop_id;
    std::size_t edge = 0;
    double u = 0.0;
    std::size_t triangle = 0;
    std::array<double, 3> bary{};
    int sgn = 0;
    int ht = 0;
    int eps = 0;

    double loop_param() const { return static_cast<double>(edge) + u; }
};

/// Transverse intersections of the projected loop with the projected surface,
/// ordered by loop parameter then triangle index.
/// Throws TangentIntersection for non-transverse contact, BoundaryGraze when
/// the loop passes within tol of a triangle edge or touches with a vertex, and
/// SurfaceContact when loop and surface meet in R x R^3.
std::vector<Piercing> piercings(const Loop& l, const Surface4& s, ProjectionAxis axis,
                                double tol = kDefaultTolerance);

/// Sum of eps over the piercings.
int lk_loop_surface(const Loop& l, const Surface4& s, ProjectionAxis axis, double tol = kDefaultTolerance);

/// Sum over components. For a surface with boundary every component must be
/// time-ordered with it, else Error(NotTimeOrdered).
int lk_hyperlink_surface(std::span<const Loop> loops, const Surface4& s, ProjectionAxis axis,
                         double tol = kDefaultTolerance);

enum class ArcSide { Interior, Exterior };
std::string to_string(ArcSide side);

/// Loop stretch between consecutive piercings.
struct Arc {
    ArcSide side = ArcSide::Exterior;
    TauExtent tau;
};

/// Cyclic piercing list of one loop against one closed connected surface.
/// arcs[i] runs from piercings[i] to piercings[(i+1) % n].
struct PiercingSequence {
    std::string loop_id;
    std::vector<Piercing> piercings;
    std::vector<Arc> arcs;

    std::size_t size() const { return piercings.size(); }
};

/// Edge-connected pieces of s as standalone surfaces with compacted vertex lists.
std::vector<Surface4> surface_components(const Surface4& s);

/// A0 piercings of l with a closed connected surface, with arcs classified by
/// alternation and cross-checked against a containment test at each arc
/// midpoint. Throws NonSeparatingProjection when the two disagree or the
/// piercing count is odd.
PiercingSequence build_piercing_sequence(const Loop& l, const Surface4& s, double tol = kDefaultTolerance);

/// One sequence per connected component of a closed surface.
std::vector<PiercingSequence> build_piercing_sequences(const Loop& l, const Surface4& s,
                                                       double tol = kDefaultTolerance);

/// An interior arc can be withdrawn when it stays above the surface's lowest
/// time or below its highest time.
bool removable(const Arc& arc, const TauExtent& surface_extent);

struct Reduction {
    PiercingSequence reduced;
    int passes = 0;
    /// Endpoint piercings of each withdrawn interior arc.
    std::vector<std::pair<Piercing, Piercing>> withdrawn;
};

/// Withdraws removable interior arcs until none is left. Each withdrawal drops
/// the arc's two piercings and merges the neighbouring exterior arcs.
Reduction reduce_movement_w(const PiercingSequence& seq, const TauExtent& surface_extent);

enum class Exactness { Exact, LowerBound };
std::string to_string(Exactness e);

struct PiercingNumber {
    int value = 0;
    Exactness exactness = Exactness::Exact;
    /// |lk| for surfaces with boundary.
    std::optional<int> lower_bound;

    friend bool operator==(const PiercingNumber&, const PiercingNumber&) = default;
};

/// Closed surface: total reduced piercing count, Exact.
/// Surface with boundary: A0 piercing count of the given representative,
/// tagged LowerBound with bound |lk(L,S)| under A0.
PiercingNumber piercing_number(std::span<const Loop> loops, const Surface4& s, double tol = kDefaultTolerance);

}  // namespace qgi
