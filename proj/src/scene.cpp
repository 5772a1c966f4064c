#include "qgi/scene.hpp"

#include <algorithm>
#include <set>

#include "qgi/distance.hpp"
#include "qgi/errors.hpp"
#include "qgi/hyperlink_invariants.hpp"
#include "qgi/transform.hpp"

namespace qgi {

std::vector<Loop> Scene::all_loops() const {
    std::vector<Loop> out = matter.loops;
    out.insert(out.end(), geometric.loops.begin(), geometric.loops.end());
    return out;
}

ViolationKind violation_for(const Error& e) {
    if (e.is_degeneracy()) return ViolationKind::NotGenericPosition;
    switch (e.kind()) {
        case ErrorKind::SurfaceContact: return ViolationKind::SurfaceContact;
        case ErrorKind::NonSeparatingProjection: return ViolationKind::SurfaceInvalid;
        case ErrorKind::OnBoundary: return ViolationKind::OnBoundary;
        case ErrorKind::NotTimeOrdered: return ViolationKind::SurfaceOrder;
        default: return ViolationKind::Structure;
    }
}

namespace {

void check_unique_ids(const Scene& s, ValidationReport& r) {
    std::set<std::string> loops, surfaces, regions;
    for (const auto& l : s.all_loops())
        if (!loops.insert(l.id).second) r.add(ViolationKind::Structure, "duplicate loop id '" + l.id + "'");
    for (const auto& m : s.surfaces)
        if (!surfaces.insert(m.id).second) r.add(ViolationKind::Structure, "duplicate surface id '" + m.id + "'");
    for (const auto& m : s.regions)
        if (!regions.insert(m.id).second) r.add(ViolationKind::Structure, "duplicate region id '" + m.id + "'");
}

struct Box4 {
    Point4 lo, hi;
};

template <class It>
Box4 box4(It first, It last) {
    Box4 b{*first, *first};
    for (; first != last; ++first)
        for (int k = 0; k < 4; ++k) {
            b.lo[k] = std::min(b.lo[k], (*first)[k]);
            b.hi[k] = std::max(b.hi[k], (*first)[k]);
        }
    return b;
}

bool apart(const Box4& a, const Box4& b, double tol) {
    for (int k = 0; k < 4; ++k)
        if (a.hi[k] + tol < b.lo[k] || b.hi[k] + tol < a.lo[k]) return true;
    return false;
}

/// Loops and surfaces must be disjoint in R x R^3.
void check_surface_contact(const std::vector<Loop>& loops, const Surface4& s, double tol, ValidationReport& r) {
    std::vector<Box4> boxes;
    for (const auto& t : s.triangles) {
        const Point4 v[] = {s.vertices[t[0]], s.vertices[t[1]], s.vertices[t[2]]};
        boxes.push_back(box4(std::begin(v), std::end(v)));
    }
    for (const auto& l : loops) {
        for (std::size_t e = 0; e < l.size(); ++e) {
            const Point4 a = l.vertex(e), b = l.vertex(e + 1);
            const Point4 ends[] = {a, b};
            const Box4 eb = box4(std::begin(ends), std::end(ends));
            for (std::size_t i = 0; i < s.triangles.size(); ++i) {
                if (apart(eb, boxes[i], tol)) continue;
                const auto& t = s.triangles[i];
                if (segment_triangle_distance(a, b, s.vertices[t[0]], s.vertices[t[1]], s.vertices[t[2]]) <= tol) {
                    r.add(ViolationKind::SurfaceContact,
                          "loop '" + l.id + "' touches surface '" + s.id + "' at triangle " + std::to_string(i));
                    return;
                }
            }
        }
    }
}

bool blocking(const ValidationReport& r) {
    for (const auto& v : r.violations)
        if (v.kind != ViolationKind::Incomparable) return true;
    return false;
}

}  // namespace

ValidationReport check_scene(const Scene& s) {
    const double tol = s.tolerance;
    ValidationReport r;
    check_unique_ids(s, r);
    const auto loops = s.all_loops();
    if (!s.matter.empty() && !s.geometric.empty())
        r.merge(validate_time_ordered_pair(TimeOrderedPair(s.matter, s.geometric), tol));
    else
        r.merge(validate_timelike(loops, tol));

    for (const auto& m : s.surfaces) {
        ValidationReport sr = validate_surface(m, tol);
        if (sr.ok()) check_surface_contact(loops, m, tol, sr);
        if (sr.ok() && !is_closed(m)) {
            const TauExtent ext = tau_extent(m);
            for (const auto& l : loops)
                if (time_order(tau_extent(l), ext) == TimeOrder::Incomparable)
                    sr.add(ViolationKind::SurfaceOrder,
                           "loop '" + l.id + "' is not time-ordered with surface '" + m.id + "'");
        }
        r.merge(sr);
    }

    bool regions_ok = true;
    for (const auto& g : s.regions) {
        ValidationReport gr = validate_region(g, tol);
        regions_ok = regions_ok && gr.ok();
        r.merge(gr);
    }
    // Frame checks run point-in-region tests, which need valid meshes.
    if (regions_ok) {
        try {
            r.merge(validate_frame(s.framed_matter(), s.regions, tol));
        } catch (const Error& e) {
            r.add(violation_for(e), e.what());
        }
    }
    return r;
}

InvariantReport compute_invariants_unchecked(const Scene& s, std::span<const ProjectionAxis> axes) {
    const double tol = s.tolerance;
    InvariantReport out;
    if (!s.matter.empty() && !s.geometric.empty()) {
        const SkResult sk = sk_hyperlink(TimeOrderedPair(s.matter, s.geometric), tol);
        out.sk = sk.value;
        out.sk_invariant = sk.invariant;
    }
    for (const auto& m : s.surfaces) {
        if (!s.geometric.empty()) {
            auto& row = out.lk_surface[m.id];
            for (ProjectionAxis a : axes) row[to_string(a)] = lk_hyperlink_surface(s.geometric.loops, m, a, tol);
        }
        if (!s.matter.empty()) out.nu_S[m.id] = piercing_number(s.matter.loops, m, tol);
    }
    const FramedHyperlink framed = s.framed_matter();
    for (const auto& g : s.regions) out.nu_R[g.id] = confinement_number(framed, g, tol);
    return out;
}

InvariantReport compute_invariants(const Scene& s, std::span<const ProjectionAxis> axes) {
    ValidationReport v = check_scene(s);
    if (blocking(v)) {
        InvariantReport out;
        out.validation = std::move(v);
        return out;
    }
    try {
        InvariantReport out = compute_invariants_unchecked(s, axes);
        out.validation = std::move(v);
        return out;
    } catch (const Error& e) {
        InvariantReport out;
        v.add(violation_for(e), e.what());
        out.validation = std::move(v);
        return out;
    }
}

ValidationReport validate_scene(const Scene& s) { return compute_invariants(s).validation; }

Scene pregeneric(const Scene& s, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x70726567ULL));
    RigidMotion m;
    m.rotation = Rotation::random(rng);
    Scene out = s;
    for (auto* h : {&out.matter, &out.geometric})
        for (auto& l : h->loops) l = transformed(l, m);
    for (auto& surf : out.surfaces)
        for (auto& v : surf.vertices) v = m.apply(v);
    for (auto& g : out.regions)
        for (auto& v : g.vertices) v = m.apply(v);
    return out;
}

}  // namespace qgi
