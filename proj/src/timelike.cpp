#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qgi/diagram.hpp"
#include "qgi/distance.hpp"
#include "qgi/errors.hpp"
#include "qgi/geom4.hpp"

namespace qgi {

namespace {

struct SpatialEdge {
    std::size_t loop;
    std::size_t edge;
    Point3 a, b;
    Point3 lo, hi;
};

std::string where(const std::vector<Loop>& loops, const SpatialEdge& e) {
    return "'" + loops[e.loop].id + "' edge " + std::to_string(e.edge);
}

void check_embedded_shadow(const std::vector<Loop>& loops, double tol, ValidationReport& r) {
    std::vector<SpatialEdge> edges;
    for (std::size_t l = 0; l < loops.size(); ++l) {
        const Loop& loop = loops[l];
        for (std::size_t i = 0; i < loop.size(); ++i) {
            SpatialEdge e{l, i, spatial(loop.vertex(i)), spatial(loop.vertex(i + 1)), {}, {}};
            for (int k = 0; k < 3; ++k) {
                e.lo[k] = std::min(e.a[k], e.b[k]);
                e.hi[k] = std::max(e.a[k], e.b[k]);
            }
            if (distance(e.a, e.b) <= tol)
                r.add(ViolationKind::T1, where(loops, e) + " has no spatial extent");
            edges.push_back(e);
        }
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto& p = edges[i];
            const auto& q = edges[j];
            bool apart = false;
            for (int k = 0; k < 3 && !apart; ++k)
                apart = p.hi[k] + tol < q.lo[k] || q.hi[k] + tol < p.lo[k];
            if (apart) continue;
            const std::size_t n = loops[p.loop].size();
            const bool p_then_q = p.loop == q.loop && (p.edge + 1) % n == q.edge;
            const bool q_then_p = p.loop == q.loop && (q.edge + 1) % n == p.edge;
            if (p_then_q || q_then_p) {
                const Point3 p_far = p_then_q ? p.a : p.b;
                const Point3 q_far = p_then_q ? q.b : q.a;
                if (point_segment_distance(p_far, q.a, q.b) <= tol ||
                    point_segment_distance(q_far, p.a, p.b) <= tol)
                    r.add(ViolationKind::T1, where(loops, p) + " folds onto " + where(loops, q));
                continue;
            }
            if (segment_segment_distance(p.a, p.b, q.a, q.b) <= tol)
                r.add(ViolationKind::T1, where(loops, p) + " and " + where(loops, q) +
                                             " share a spatial point");
        }
    }
}

}  // namespace

ValidationReport validate_timelike(std::span<const Loop> loops_in, double tol) {
    ValidationReport r;
    const std::vector<Loop> loops(loops_in.begin(), loops_in.end());
    std::set<std::string> ids;
    for (const auto& loop : loops) {
        r.merge(check_loop_structure(loop, tol));
        if (!ids.insert(loop.id).second) r.add(ViolationKind::Structure, "duplicate loop id '" + loop.id + "'");
    }
    if (!r.ok()) return r;

    check_embedded_shadow(loops, tol, r);
    if (!r.ok()) return r;

    std::vector<Polyline3> link;
    link.reserve(loops.size());
    for (const auto& loop : loops) link.push_back(spatial_projection(loop));

    for (Plane plane : kAllPlanes) {
        Diagram d;
        try {
            d = build_diagram(link, plane, tol);
        } catch (const Error& e) {
            r.add(ViolationKind::NotGenericPosition, e.what());
            continue;
        }
        for (const auto& c : d.crossings) {
            const double t_over = time_of(loops[c.over.strand].point_at(c.over.edge, c.over.u));
            const double t_under = time_of(loops[c.under.strand].point_at(c.under.edge, c.under.u));
            if (std::abs(t_over - t_under) <= tol) {
                std::ostringstream os;
                os << "crossing of '" << c.over.loop_id << "' edge " << c.over.edge << " and '"
                   << c.under.loop_id << "' edge " << c.under.edge << " on " << to_string(plane)
                   << " has equal times " << t_over;
                r.add(ViolationKind::T2, os.str());
            }
        }
    }
    return r;
}

}  // namespace qgi
