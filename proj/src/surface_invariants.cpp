#include "qgi/surface_invariants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "qgi/errors.hpp"
#include "qgi/predicates.hpp"

namespace qgi {

Point3 oriented_image(const Point4& p, ProjectionAxis axis) {
    switch (axis) {
        case ProjectionAxis::A0: return {{p[1], p[2], p[3]}};
        case ProjectionAxis::A1: return {{p[0], p[3], p[2]}};
        case ProjectionAxis::A2: return {{p[0], p[1], p[3]}};
        case ProjectionAxis::A3: return {{p[0], p[2], p[1]}};
    }
    return {};
}

std::string to_string(ArcSide side) { return side == ArcSide::Interior ? "Interior" : "Exterior"; }
std::string to_string(Exactness e) { return e == Exactness::Exact ? "Exact" : "LowerBound"; }

namespace {

std::string where(const Loop& l, std::size_t edge, const Surface4& s, std::size_t tri, ProjectionAxis axis) {
    std::ostringstream os;
    os << "loop '" << l.id << "' edge " << edge << " and surface '" << s.id << "' triangle " << tri << " under "
       << to_string(axis);
    return os.str();
}

struct Box {
    Point3 lo, hi;
};

Box box_of(std::initializer_list<Point3> pts) {
    Box b{*pts.begin(), *pts.begin()};
    for (const auto& p : pts)
        for (int k = 0; k < 3; ++k) {
            b.lo[k] = std::min(b.lo[k], p[k]);
            b.hi[k] = std::max(b.hi[k], p[k]);
        }
    return b;
}

bool apart(const Box& a, const Box& b, double tol) {
    for (int k = 0; k < 3; ++k)
        if (a.hi[k] + tol < b.lo[k] || b.hi[k] + tol < a.lo[k]) return true;
    return false;
}

/// Time range of the loop over the cyclic parameter interval [a, b].
TauExtent loop_tau(const Loop& l, double a, double b) {
    const double n = static_cast<double>(l.size());
    if (b <= a) b += n;
    TauExtent e{time_of(l.point_at(a)), time_of(l.point_at(a))};
    auto include = [&](double t) {
        e.lo = std::min(e.lo, t);
        e.hi = std::max(e.hi, t);
    };
    include(time_of(l.point_at(b)));
    for (double v = std::floor(a) + 1; v < b; v += 1) include(time_of(l.vertex(static_cast<std::size_t>(v))));
    return e;
}

}  // namespace

std::vector<Piercing> piercings(const Loop& l, const Surface4& s, ProjectionAxis axis, double tol) {
    std::vector<Point3> img(s.vertices.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = oriented_image(s.vertices[i], axis);
    std::vector<Box> tri_box;
    tri_box.reserve(s.triangles.size());
    for (const auto& t : s.triangles) tri_box.push_back(box_of({img[t[0]], img[t[1]], img[t[2]]}));

    using Kind = SegmentTriangleHit::Kind;
    std::vector<Piercing> out;
    for (std::size_t e = 0; e < l.size(); ++e) {
        const Point4& q0 = l.vertex(e);
        const Point4& q1 = l.vertex(e + 1);
        const Point3 p0 = oriented_image(q0, axis), p1 = oriented_image(q1, axis);
        const Box eb = box_of({p0, p1});
        for (std::size_t ti = 0; ti < s.triangles.size(); ++ti) {
            if (apart(eb, tri_box[ti], tol)) continue;
            const auto& t = s.triangles[ti];
            const auto hit = intersect_segment_triangle(p0, p1, img[t[0]], img[t[1]], img[t[2]], tol);
            switch (hit.kind) {
                case Kind::None: continue;
                case Kind::Tangent:
                    throw Error(ErrorKind::TangentIntersection, where(l, e, s, ti, axis) + " meet tangentially");
                case Kind::EndpointOnTriangle:
                    throw Error(ErrorKind::BoundaryGraze, where(l, e, s, ti, axis) + " meet at a loop vertex");
                case Kind::EdgeGraze:
                    throw Error(ErrorKind::BoundaryGraze, where(l, e, s, ti, axis) + " meet at a triangle edge");
                case Kind::Proper: break;
            }
            Piercing p;
            p.axis = axis;
            p.point = lerp(p0, p1, hit.t);
            p.loop_id = l.id;
            p.edge = e;
            p.u = hit.t;
            p.triangle = ti;
            p.bary = {hit.w0, hit.w1, hit.w2};
            p.sgn = hit.normal_dot > 0 ? 1 : -1;
            const Point4 on_surface =
                s.vertices[t[0]] * hit.w0 + s.vertices[t[1]] * hit.w1 + s.vertices[t[2]] * hit.w2;
            const double gap = dropped_coordinate(on_surface, axis) - dropped_coordinate(lerp(q0, q1, hit.t), axis);
            if (std::abs(gap) <= tol)
                throw Error(ErrorKind::SurfaceContact, where(l, e, s, ti, axis) + " touch in R x R^3");
            p.ht = gap < 0 ? 1 : -1;
            p.eps = p.sgn * p.ht;
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end(), [](const Piercing& a, const Piercing& b) {
        if (a.edge != b.edge) return a.edge < b.edge;
        if (a.u != b.u) return a.u < b.u;
        return a.triangle < b.triangle;
    });
    return out;
}

int lk_loop_surface(const Loop& l, const Surface4& s, ProjectionAxis axis, double tol) {
    int sum = 0;
    for (const auto& p : piercings(l, s, axis, tol)) sum += p.eps;
    return sum;
}

int lk_hyperlink_surface(std::span<const Loop> loops, const Surface4& s, ProjectionAxis axis, double tol) {
    if (!is_closed(s)) {
        const TauExtent ext = tau_extent(s);
        for (const auto& l : loops)
            if (time_order(tau_extent(l), ext) == TimeOrder::Incomparable)
                throw Error(ErrorKind::NotTimeOrdered,
                            "loop '" + l.id + "' overlaps surface '" + s.id + "' in time");
    }
    int sum = 0;
    for (const auto& l : loops) sum += lk_loop_surface(l, s, axis, tol);
    return sum;
}

std::vector<Surface4> surface_components(const Surface4& s) {
    std::vector<Surface4> out;
    for (const auto& comp : triangle_components(s.triangles)) {
        Surface4 part{s.id, {}, {}};
        std::map<std::size_t, std::size_t> remap;
        for (auto ti : comp) {
            Triangle t = s.triangles[ti];
            for (auto& v : t) {
                auto [it, fresh] = remap.emplace(v, part.vertices.size());
                if (fresh) part.vertices.push_back(s.vertices[v]);
                v = it->second;
            }
            part.triangles.push_back(t);
        }
        out.push_back(std::move(part));
    }
    return out;
}

PiercingSequence build_piercing_sequence(const Loop& l, const Surface4& s, double tol) {
    if (!is_closed(s)) throw Error(ErrorKind::InvalidInput, "surface '" + s.id + "' is not closed");
    PiercingSequence seq;
    seq.loop_id = l.id;
    seq.piercings = piercings(l, s, ProjectionAxis::A0, tol);
    const std::size_t n = seq.size();
    if (n == 0) return seq;
    if (n % 2)
        throw Error(ErrorKind::NonSeparatingProjection,
                    "loop '" + l.id + "' pierces surface '" + s.id + "' an odd number of times");

    const auto verts = spatial_vertices(s);
    const double len = static_cast<double>(l.size());
    auto side_at = [&](double a, double b) {
        if (b <= a) b += len;
        for (double f : {0.5, 0.25, 0.75, 0.125, 0.875}) {
            const Point3 x = spatial(l.point_at(a + f * (b - a)));
            const Containment c = point_in_mesh(x, verts, s.triangles, tol);
            if (c != Containment::OnBoundary) return c == Containment::Inside ? ArcSide::Interior : ArcSide::Exterior;
        }
        throw Error(ErrorKind::NumericalInstability, "arc of loop '" + l.id + "' hugs surface '" + s.id + "'");
    };

    seq.arcs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double a = seq.piercings[i].loop_param();
        const double b = seq.piercings[(i + 1) % n].loop_param();
        seq.arcs[i].side = side_at(a, b);
        seq.arcs[i].tau = loop_tau(l, a, b);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (seq.arcs[i].side == seq.arcs[(i + 1) % n].side)
            throw Error(ErrorKind::NonSeparatingProjection,
                        "arcs of loop '" + l.id + "' do not alternate across surface '" + s.id + "'");
    }
    return seq;
}

std::vector<PiercingSequence> build_piercing_sequences(const Loop& l, const Surface4& s, double tol) {
    std::vector<PiercingSequence> out;
    for (const auto& part : surface_components(s)) out.push_back(build_piercing_sequence(l, part, tol));
    return out;
}

bool removable(const Arc& arc, const TauExtent& ext) { return arc.tau.lo > ext.lo || arc.tau.hi < ext.hi; }

Reduction reduce_movement_w(const PiercingSequence& seq, const TauExtent& ext) {
    Reduction r;
    r.reduced = seq;
    for (;;) {
        auto& cur = r.reduced;
        const std::size_t n = cur.size();
        std::vector<bool> drop(n, false);
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (cur.arcs[i].side != ArcSide::Interior || !removable(cur.arcs[i], ext)) continue;
            drop[i] = drop[(i + 1) % n] = true;
            r.withdrawn.emplace_back(cur.piercings[i], cur.piercings[(i + 1) % n]);
            any = true;
        }
        if (!any) break;
        ++r.passes;

        PiercingSequence next;
        next.loop_id = cur.loop_id;
        std::size_t start = 0;
        while (start < n && drop[start]) ++start;
        if (start == n) {
            r.reduced = next;
            continue;
        }
        // Walk from a kept piercing; its outgoing arc absorbs every arc up to the next kept one.
        std::size_t i = start;
        do {
            next.piercings.push_back(cur.piercings[i]);
            Arc merged = cur.arcs[i];
            std::size_t j = (i + 1) % n;
            while (drop[j]) {
                merged.tau.lo = std::min(merged.tau.lo, cur.arcs[j].tau.lo);
                merged.tau.hi = std::max(merged.tau.hi, cur.arcs[j].tau.hi);
                j = (j + 1) % n;
            }
            next.arcs.push_back(merged);
            i = j;
        } while (i != start);
        r.reduced = next;
    }
    return r;
}

PiercingNumber piercing_number(std::span<const Loop> loops, const Surface4& s, double tol) {
    PiercingNumber nu;
    if (is_closed(s)) {
        for (const auto& part : surface_components(s)) {
            const TauExtent ext = tau_extent(part);
            for (const auto& l : loops)
                nu.value += static_cast<int>(reduce_movement_w(build_piercing_sequence(l, part, tol), ext).reduced.size());
        }
        return nu;
    }
    const int lk = lk_hyperlink_surface(loops, s, ProjectionAxis::A0, tol);
    for (const auto& l : loops) nu.value += static_cast<int>(piercings(l, s, ProjectionAxis::A0, tol).size());
    nu.exactness = Exactness::LowerBound;
    nu.lower_bound = std::abs(lk);
    return nu;
}

}  // namespace qgi
