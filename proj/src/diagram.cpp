#include "qgi/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qgi/distance.hpp"
#include "qgi/errors.hpp"

namespace qgi {

namespace {

struct ProjectedEdge {
    std::size_t strand;
    std::size_t edge;
    Point2 a, b;
    double depth_a, depth_b;
    Point2 lo, hi;
};

[[noreturn]] void degenerate(Plane plane, const std::string& what) {
    throw Error(ErrorKind::DegenerateDiagram, what + " on " + to_string(plane));
}

std::string edge_name(const std::vector<Polyline3>& link, const ProjectedEdge& e) {
    return "'" + link[e.strand].id + "' edge " + std::to_string(e.edge);
}

Point2 unit(const Point2& v) { return v * (1.0 / norm(v)); }

bool boxes_apart(const ProjectedEdge& p, const ProjectedEdge& q, double tol) {
    for (int k = 0; k < 2; ++k) {
        if (p.hi[k] + tol < q.lo[k] || q.hi[k] + tol < p.lo[k]) return true;
    }
    return false;
}

bool adjacent(const std::vector<Polyline3>& link, const ProjectedEdge& p, const ProjectedEdge& q) {
    if (p.strand != q.strand) return false;
    const std::size_t n = link[p.strand].vertices.size();
    return (p.edge + 1) % n == q.edge || (q.edge + 1) % n == p.edge;
}

}  // namespace

Polyline3 spatial_projection(const Loop& loop) {
    Polyline3 out{loop.id, {}};
    out.vertices.reserve(loop.size());
    for (const auto& v : loop.vertices) out.vertices.push_back(spatial(v));
    return out;
}

int crossing_sign(const Point2& over_tangent, const Point2& under_tangent, double tol) {
    const double c = cross(over_tangent, under_tangent);
    if (std::abs(c) <= tol) throw Error(ErrorKind::ParallelTangents, "crossing strands are parallel");
    return c > 0 ? 1 : -1;
}

Diagram build_diagram(std::span<const Polyline3> link, Plane plane, double tol) {
    Diagram d;
    d.plane = plane;
    d.link.assign(link.begin(), link.end());

    std::vector<ProjectedEdge> edges;
    for (std::size_t s = 0; s < link.size(); ++s) {
        const auto& verts = link[s].vertices;
        std::vector<Point2> strand;
        strand.reserve(verts.size());
        for (const auto& v : verts) strand.push_back(plane_coords(v, plane));
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const std::size_t j = (i + 1) % verts.size();
            ProjectedEdge e{s, i, strand[i], strand[j], plane_depth(verts[i], plane),
                            plane_depth(verts[j], plane), {}, {}};
            for (int k = 0; k < 2; ++k) {
                e.lo[k] = std::min(e.a[k], e.b[k]);
                e.hi[k] = std::max(e.a[k], e.b[k]);
            }
            if (distance(e.a, e.b) <= tol)
                degenerate(plane, "edge " + edge_name(d.link, e) + " projects to a point");
            edges.push_back(e);
        }
        d.strands.push_back(std::move(strand));
    }

    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            const auto& p = edges[i];
            const auto& q = edges[j];
            if (boxes_apart(p, q, tol)) continue;

            if (adjacent(d.link, p, q)) {
                // Shared vertex; the far endpoint of one edge must stay off the other.
                const bool p_first = (p.edge + 1) % d.link[p.strand].vertices.size() == q.edge;
                const Point2 p_far = p_first ? p.a : p.b;
                const Point2 q_far = p_first ? q.b : q.a;
                if (point_segment_distance(p_far, q.a, q.b) <= tol ||
                    point_segment_distance(q_far, p.a, p.b) <= tol) {
                    degenerate(plane, "edges " + edge_name(d.link, p) + " and " + edge_name(d.link, q) +
                                          " overlap");
                }
                continue;
            }

            const Point2 dp = p.b - p.a;
            const Point2 dq = q.b - q.a;
            const double lp = norm(dp);
            const double lq = norm(dq);
            const double near = std::min({point_segment_distance(p.a, q.a, q.b),
                                          point_segment_distance(p.b, q.a, q.b),
                                          point_segment_distance(q.a, p.a, p.b),
                                          point_segment_distance(q.b, p.a, p.b)});
            const double denom = cross(dp, dq);
            if (std::abs(denom) <= tol * lp * lq) {
                if (near <= tol)
                    degenerate(plane, "edges " + edge_name(d.link, p) + " and " + edge_name(d.link, q) +
                                          " are collinear and touch");
                continue;
            }
            const Point2 w = q.a - p.a;
            const double s = cross(w, dq) / denom;
            const double t = cross(w, dp) / denom;
            const bool hits = s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0;
            if (!hits) {
                if (near <= tol)
                    degenerate(plane, "edges " + edge_name(d.link, p) + " and " + edge_name(d.link, q) +
                                          " are tangent");
                continue;
            }
            if (s * lp <= tol || (1.0 - s) * lp <= tol || t * lq <= tol || (1.0 - t) * lq <= tol)
                degenerate(plane, "crossing of " + edge_name(d.link, p) + " and " + edge_name(d.link, q) +
                                      " sits on a projected vertex");

            const double depth_p = p.depth_a + s * (p.depth_b - p.depth_a);
            const double depth_q = q.depth_a + t * (q.depth_b - q.depth_a);
            if (std::abs(depth_p - depth_q) <= tol)
                degenerate(plane, "over/under tie between " + edge_name(d.link, p) + " and " +
                                      edge_name(d.link, q));

            const bool p_over = depth_p > depth_q;
            const auto& over = p_over ? p : q;
            const auto& under = p_over ? q : p;
            Crossing c;
            c.plane = plane;
            c.point = p.a + dp * s;
            c.over = {over.strand, d.link[over.strand].id, over.edge, p_over ? s : t};
            c.under = {under.strand, d.link[under.strand].id, under.edge, p_over ? t : s};
            c.eps = crossing_sign(unit(over.b - over.a), unit(under.b - under.a), tol);
            c.inter_component = p.strand != q.strand;
            d.crossings.push_back(std::move(c));
        }
    }

    for (std::size_t i = 0; i < d.crossings.size(); ++i)
        for (std::size_t j = i + 1; j < d.crossings.size(); ++j)
            if (distance(d.crossings[i].point, d.crossings[j].point) <= tol)
                degenerate(plane, "triple point");
    return d;
}

int lk_link(const Polyline3& a, const Polyline3& b, Plane plane, double tol) {
    const Polyline3 link[] = {a, b};
    const Diagram d = build_diagram(link, plane, tol);
    int sum = 0;
    for (const auto& c : d.crossings)
        if (c.inter_component) sum += c.eps;
    return sum;
}

double gauss_lk_value(const Polyline3& a, const Polyline3& b, double tol) {
    auto unit3 = [tol](const Point3& v) {
        const double n = norm(v);
        if (n <= tol) throw Error(ErrorKind::NumericalInstability, "segment pair near the branch cut");
        return v * (1.0 / n);
    };
    auto safe_asin = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };

    const std::size_t na = a.vertices.size();
    const std::size_t nb = b.vertices.size();
    double total = 0.0;
    for (std::size_t i = 0; i < na; ++i) {
        const Point3& p1 = a.vertices[i];
        const Point3& p2 = a.vertices[(i + 1) % na];
        for (std::size_t j = 0; j < nb; ++j) {
            const Point3& p3 = b.vertices[j];
            const Point3& p4 = b.vertices[(j + 1) % nb];
            if (segment_segment_distance(p1, p2, p3, p4) <= tol)
                throw Error(ErrorKind::NumericalInstability, "components touch");
            const Point3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
            const Point3 n1 = unit3(cross(r13, r14));
            const Point3 n2 = unit3(cross(r14, r24));
            const Point3 n3 = unit3(cross(r24, r23));
            const Point3 n4 = unit3(cross(r23, r13));
            const double omega = safe_asin(dot(n1, n2)) + safe_asin(dot(n2, n3)) +
                                 safe_asin(dot(n3, n4)) + safe_asin(dot(n4, n1));
            const double orient = dot(cross(p4 - p3, p2 - p1), r13);
            const double sgn = orient > 0 ? 1.0 : (orient < 0 ? -1.0 : 0.0);
            total += omega * sgn;
        }
    }
    return total / (4.0 * std::numbers::pi);
}

int gauss_lk_oracle(const Polyline3& a, const Polyline3& b, double tol) {
    const double v = gauss_lk_value(a, b, tol);
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-6) {
        std::ostringstream os;
        os << "Gauss sum " << v << " is not an integer";
        throw Error(ErrorKind::NumericalInstability, os.str());
    }
    return static_cast<int>(r);
}

}  // namespace qgi
