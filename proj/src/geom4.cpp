#include "qgi/geom4.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qgi {

std::string to_string(ProjectionAxis a) { return "A" + std::to_string(index_of(a)); }
std::string to_string(Plane p) { return "S" + std::to_string(index_of(p)); }

std::string to_string(TimeOrder o) {
    switch (o) {
        case TimeOrder::Before: return "Before";
        case TimeOrder::After: return "After";
        case TimeOrder::Incomparable: return "Incomparable";
    }
    return "Incomparable";
}

Point3 project(const Point4& p, ProjectionAxis axis) {
    switch (axis) {
        case ProjectionAxis::A0: return {{p[1], p[2], p[3]}};
        case ProjectionAxis::A1: return {{p[0], p[2], p[3]}};
        case ProjectionAxis::A2: return {{p[0], p[3], p[1]}};
        case ProjectionAxis::A3: return {{p[0], p[1], p[2]}};
    }
    return {};
}

Point4 embed(const Point3& q, ProjectionAxis axis) {
    switch (axis) {
        case ProjectionAxis::A0: return {{0.0, q[0], q[1], q[2]}};
        case ProjectionAxis::A1: return {{q[0], 0.0, q[1], q[2]}};
        case ProjectionAxis::A2: return {{q[0], q[2], 0.0, q[1]}};
        case ProjectionAxis::A3: return {{q[0], q[1], q[2], 0.0}};
    }
    return {};
}

Point2 plane_coords(const Point3& x, Plane plane) {
    // spatial index k-1 is x_k
    const int k = index_of(plane) - 1;
    return {{x[(k + 1) % 3], x[(k + 2) % 3]}};
}

double plane_depth(const Point3& x, Plane plane) { return x[index_of(plane) - 1]; }

Point4 Loop::point_at(double s) const {
    const double n = static_cast<double>(vertices.size());
    s = std::fmod(s, n);
    if (s < 0) s += n;
    auto edge = static_cast<std::size_t>(std::floor(s));
    if (edge >= vertices.size()) edge = vertices.size() - 1;
    return point_at(edge, s - static_cast<double>(edge));
}

TauExtent tau_extent(std::span<const Point4> points) {
    TauExtent e{points.empty() ? 0.0 : points.front()[0], points.empty() ? 0.0 : points.front()[0]};
    for (const auto& p : points) {
        e.lo = std::min(e.lo, p[0]);
        e.hi = std::max(e.hi, p[0]);
    }
    return e;
}

TimeOrder time_order(const TauExtent& a, const TauExtent& b) {
    if (a.hi < b.lo) return TimeOrder::Before;
    if (a.lo > b.hi) return TimeOrder::After;
    return TimeOrder::Incomparable;
}

ValidationReport check_loop_structure(const Loop& loop, double tol) {
    ValidationReport r;
    if (loop.vertices.size() < 3) {
        r.add(ViolationKind::Structure, "loop '" + loop.id + "' has fewer than 3 vertices");
        return r;
    }
    for (std::size_t i = 0; i < loop.size(); ++i) {
        if (!all_finite(loop.vertices[i])) {
            r.add(ViolationKind::Structure,
                  "loop '" + loop.id + "' vertex " + std::to_string(i) + " is not finite");
        }
    }
    if (!r.ok()) return r;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        if (distance(loop.vertex(i), loop.vertex(i + 1)) <= tol) {
            r.add(ViolationKind::Structure, "loop '" + loop.id + "' vertices " + std::to_string(i) +
                                                " and " + std::to_string((i + 1) % loop.size()) +
                                                " coincide");
        }
    }
    return r;
}

OrderMatrix order_matrix(const Hyperlink& matter, const Hyperlink& geometric) {
    OrderMatrix m(matter.loops.size(), std::vector<TimeOrder>(geometric.loops.size()));
    for (std::size_t u = 0; u < matter.loops.size(); ++u)
        for (std::size_t v = 0; v < geometric.loops.size(); ++v)
            m[u][v] = time_order(matter.loops[u], geometric.loops[v]);
    return m;
}

bool all_comparable(const OrderMatrix& m) {
    for (const auto& row : m)
        for (auto o : row)
            if (o == TimeOrder::Incomparable) return false;
    return true;
}

TimeOrderedPair::TimeOrderedPair(Hyperlink matter_, Hyperlink geometric_)
    : matter(std::move(matter_)), geometric(std::move(geometric_)) {
    order = order_matrix(matter, geometric);
}

ValidationReport validate_time_ordered_pair(const TimeOrderedPair& pair, double tol) {
    std::vector<Loop> all = pair.matter.loops;
    all.insert(all.end(), pair.geometric.loops.begin(), pair.geometric.loops.end());
    ValidationReport r = validate_timelike(all, tol);
    const OrderMatrix m = order_matrix(pair.matter, pair.geometric);
    for (std::size_t u = 0; u < m.size(); ++u) {
        for (std::size_t v = 0; v < m[u].size(); ++v) {
            if (m[u][v] != TimeOrder::Incomparable) continue;
            std::ostringstream os;
            os << "matter loop '" << pair.matter.loops[u].id << "' and geometric loop '"
               << pair.geometric.loops[v].id << "' have overlapping time extents";
            r.add(ViolationKind::Incomparable, os.str());
        }
    }
    return r;
}

}  // namespace qgi
