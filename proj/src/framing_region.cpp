#include "qgi/framing_region.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qgi/distance.hpp"
#include "qgi/errors.hpp"

namespace qgi {

namespace {

const Loop* find_loop(const Hyperlink& h, const std::string& id) {
    for (const auto& l : h.loops)
        if (l.id == id) return &l;
    return nullptr;
}

double distance_to_region(const Point3& p, const Region3& r) { return distance_to_mesh(p, r.vertices, r.triangles); }

/// True when the loop passes through the region inside the x0 = 0 slice.
bool meets_region(const Loop& l, const Region3& r, double tol) {
    for (std::size_t e = 0; e < l.size(); ++e) {
        const Point4 a = l.vertex(e), b = l.vertex(e + 1);
        const double ta = time_of(a), tb = time_of(b);
        if (std::abs(ta) <= tol && std::abs(tb) <= tol) {
            const Point3 sa = spatial(a), sb = spatial(b);
            for (const auto& t : r.triangles)
                if (segment_triangle_distance(sa, sb, r.vertices[t[0]], r.vertices[t[1]], r.vertices[t[2]]) <= tol)
                    return true;
            if (point_in_region(sa, r, tol) != Containment::Outside) return true;
            continue;
        }
        if ((ta > tol && tb > tol) || (ta < -tol && tb < -tol)) continue;
        const double s = std::clamp(ta / (ta - tb), 0.0, 1.0);
        if (point_in_region(spatial(lerp(a, b, s)), r, tol) != Containment::Outside) return true;
    }
    return false;
}

}  // namespace

Point3 node_position(const Node& n, const Hyperlink& h) {
    const Loop* l = find_loop(h, n.loop_id);
    if (!l) throw Error(ErrorKind::InvalidInput, "node refers to unknown loop '" + n.loop_id + "'");
    if (n.edge >= l->size())
        throw Error(ErrorKind::InvalidInput, "node edge " + std::to_string(n.edge) + " out of range on '" + n.loop_id + "'");
    return spatial(l->point_at(n.edge, n.u));
}

Containment point_in_region(const Point3& p, const Region3& r, double tol) {
    bool inside = false;
    for (const auto& comp : triangle_components(r.triangles)) {
        std::vector<Triangle> tris;
        tris.reserve(comp.size());
        for (auto i : comp) tris.push_back(r.triangles[i]);
        const Containment c = point_in_mesh(p, r.vertices, tris, tol);
        if (c == Containment::OnBoundary) return c;
        inside = inside || c == Containment::Inside;
    }
    return inside ? Containment::Inside : Containment::Outside;
}

ValidationReport validate_frame(const FramedHyperlink& f, std::span<const Region3> regions, double tol) {
    ValidationReport rep;
    std::map<std::string, std::vector<const Node*>> by_loop;
    for (const auto& n : f.nodes) {
        const Loop* l = find_loop(f.hyperlink, n.loop_id);
        const std::string name = "node on '" + n.loop_id + "' edge " + std::to_string(n.edge);
        if (!l) {
            rep.add(ViolationKind::NodeInvalid, name + " refers to an unknown loop");
        } else if (n.edge >= l->size()) {
            rep.add(ViolationKind::NodeInvalid, name + " refers to a missing edge");
        } else if (!(n.u > 0.0 && n.u < 1.0)) {
            rep.add(ViolationKind::NodeInvalid, name + " has parameter outside (0,1)");
        } else if (n.sign != 1 && n.sign != -1) {
            rep.add(ViolationKind::NodeInvalid, name + " has sign other than +1/-1");
        } else {
            by_loop[n.loop_id].push_back(&n);
        }
    }
    for (const auto& [id, nodes] : by_loop) {
        for (const Node* n : nodes) {
            if (n->sign != nodes.front()->sign) {
                rep.add(ViolationKind::MixedSigns, "loop '" + id + "' carries nodes of both signs");
                break;
            }
        }
        if (nodes.size() % 2)
            rep.add(ViolationKind::OddNodeCount,
                    "loop '" + id + "' carries " + std::to_string(nodes.size()) + " nodes");
    }
    for (const auto& region : regions) {
        for (const auto& [id, nodes] : by_loop) {
            for (const Node* n : nodes) {
                if (distance_to_region(node_position(*n, f.hyperlink), region) <= tol)
                    rep.add(ViolationKind::OnBoundary, "node on '" + id + "' edge " + std::to_string(n->edge) +
                                                           " lies on the boundary of region '" + region.id + "'");
            }
        }
        for (const auto& l : f.hyperlink.loops)
            if (meets_region(l, region, tol))
                rep.add(ViolationKind::RegionContact,
                        "loop '" + l.id + "' meets region '" + region.id + "' in its time slice");
    }
    return rep;
}

int confinement_number(const FramedHyperlink& f, const Region3& r, double tol) {
    int count = 0;
    for (const auto& n : f.nodes) {
        switch (point_in_region(node_position(n, f.hyperlink), r, tol)) {
            case Containment::Inside: ++count; break;
            case Containment::Outside: break;
            case Containment::OnBoundary:
                throw Error(ErrorKind::OnBoundary, "node on '" + n.loop_id + "' edge " + std::to_string(n.edge) +
                                                       " lies on the boundary of region '" + r.id + "'");
        }
    }
    return count;
}

}  // namespace qgi
