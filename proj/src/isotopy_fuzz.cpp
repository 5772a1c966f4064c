#include "qgi/isotopy_fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "qgi/diagram.hpp"
#include "qgi/distance.hpp"
#include "qgi/framing_region.hpp"
#include "qgi/random.hpp"

namespace qgi {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr std::pair<MoveKind, const char*> kMoveNames[] = {
    {MoveKind::SpatialRigid, "SpatialRigid"}, {MoveKind::TimeTranslateComponent, "TimeTranslateComponent"},
    {MoveKind::VertexJitter, "VertexJitter"}, {MoveKind::EdgeSubdivide, "EdgeSubdivide"},
    {MoveKind::NodeSlide, "NodeSlide"},       {MoveKind::RegionRigid, "RegionRigid"},
};

}  // namespace

std::string to_string(MoveKind k) {
    for (const auto& [kind, name] : kMoveNames)
        if (kind == k) return name;
    return "Unknown";
}

std::optional<MoveKind> parse_move_kind(std::string_view name) {
    for (const auto& [kind, n] : kMoveNames)
        if (name == n) return kind;
    return std::nullopt;
}

std::string to_string(StepViolationKind k) {
    switch (k) {
        case StepViolationKind::TimeLikeLost: return "TimeLikeLost";
        case StepViolationKind::OrderingFlipped: return "OrderingFlipped";
        case StepViolationKind::SurfaceBoundaryOrderLost: return "SurfaceBoundaryOrderLost";
        case StepViolationKind::NodeCrossedBoundary: return "NodeCrossedBoundary";
        case StepViolationKind::InvariantChanged: return "InvariantChanged";
    }
    return "Unknown";
}

bool StepReport::inadmissible() const {
    return std::any_of(violations.begin(), violations.end(),
                       [](const StepViolation& v) { return v.kind != StepViolationKind::InvariantChanged; });
}

bool StepReport::invariant_changed() const {
    return std::any_of(violations.begin(), violations.end(),
                       [](const StepViolation& v) { return v.kind == StepViolationKind::InvariantChanged; });
}

InvarianceBrokenError::InvarianceBrokenError(std::size_t step, StepReport report)
    : Error(ErrorKind::InvarianceBroken,
            [&] {
                std::ostringstream os;
                os << "step " << step << " (" << to_string(report.move.kind) << ")";
                for (const auto& v : report.violations)
                    if (v.kind == StepViolationKind::InvariantChanged)
                        os << " changed " << v.name << " from " << v.before << " to " << v.after;
                return os.str();
            }()),
      step_(step),
      report_(std::move(report)) {}

namespace {

// ---------------------------------------------------------------------------
// Scene lookups

Loop* find_loop(Scene& s, const std::string& id) {
    for (auto* h : {&s.matter, &s.geometric})
        for (auto& l : h->loops)
            if (l.id == id) return &l;
    return nullptr;
}

bool is_matter(const Scene& s, const std::string& id) {
    return std::any_of(s.matter.loops.begin(), s.matter.loops.end(), [&](const Loop& l) { return l.id == id; });
}

Point4 at_slice(const Point3& x) { return {{0.0, x[0], x[1], x[2]}}; }

// ---------------------------------------------------------------------------
// Clearances

/// Smallest |time difference| over diagram crossings that involve each loop.
std::map<std::string, double> crossing_time_gaps(const Scene& s) {
    const auto loops = s.all_loops();
    std::map<std::string, double> gap;
    for (const auto& l : loops) gap[l.id] = kInf;
    std::vector<Polyline3> link;
    for (const auto& l : loops) link.push_back(spatial_projection(l));
    for (Plane p : kAllPlanes) {
        Diagram d;
        try {
            d = build_diagram(link, p, s.tolerance);
        } catch (const Error&) {
            for (auto& [id, g] : gap) g = 0.0;
            return gap;
        }
        for (const auto& c : d.crossings) {
            const double t1 = time_of(loops[c.over.strand].point_at(c.over.edge, c.over.u));
            const double t2 = time_of(loops[c.under.strand].point_at(c.under.edge, c.under.u));
            const double dt = std::abs(t1 - t2);
            gap[c.over.loop_id] = std::min(gap[c.over.loop_id], dt);
            gap[c.under.loop_id] = std::min(gap[c.under.loop_id], dt);
        }
    }
    return gap;
}

double extent_gap(const TauExtent& a, const TauExtent& b) {
    switch (time_order(a, b)) {
        case TimeOrder::Before: return b.lo - a.hi;
        case TimeOrder::After: return a.lo - b.hi;
        case TimeOrder::Incomparable: return kInf;
    }
    return kInf;
}

/// Time slack before loop `l` changes its order with a partner loop or a
/// surface with boundary, or an interior arc changes its removability.
double ordering_gap(const Scene& s, const Loop& l) {
    const bool matter = is_matter(s, l.id);
    const TauExtent e = tau_extent(l);
    double g = kInf;
    for (const auto& p : (matter ? s.geometric : s.matter).loops) g = std::min(g, extent_gap(e, tau_extent(p)));
    for (const auto& m : s.surfaces) {
        if (!is_closed(m)) {
            g = std::min(g, extent_gap(e, tau_extent(m)));
        } else if (matter) {
            try {
                for (const auto& part : surface_components(m)) {
                    const TauExtent se = tau_extent(part);
                    for (const auto& a : build_piercing_sequence(l, part, s.tolerance).arcs) {
                        if (a.side != ArcSide::Interior) continue;
                        g = std::min({g, std::abs(a.tau.lo - se.lo), std::abs(a.tau.hi - se.hi)});
                    }
                }
            } catch (const Error&) {
                g = 0.0;
            }
        }
    }
    return g;
}

double edge_surfaces_clearance4(const Point4& a, const Point4& b, const Scene& s) {
    double d = kInf;
    for (const auto& m : s.surfaces)
        for (const auto& t : m.triangles)
            d = std::min(d, segment_triangle_distance(a, b, m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]));
    return d;
}

double edge_regions_clearance4(const Point4& a, const Point4& b, const Scene& s, const Region3* only = nullptr) {
    double d = kInf;
    for (const auto& g : s.regions) {
        if (only && &g != only) continue;
        for (const auto& t : g.triangles)
            d = std::min(d, segment_triangle_distance(a, b, at_slice(g.vertices[t[0]]), at_slice(g.vertices[t[1]]),
                                                      at_slice(g.vertices[t[2]])));
    }
    return d;
}

double node_region_clearance(const Point3& p, const Scene& s, const Region3* only = nullptr) {
    double d = kInf;
    for (const auto& g : s.regions)
        if (!only || &g == only) d = std::min(d, distance_to_mesh(p, g.vertices, g.triangles));
    return d;
}

double loop_clearance4(const Loop& l, const Scene& s) {
    double d = kInf;
    const bool matter = is_matter(s, l.id);
    for (std::size_t e = 0; e < l.size(); ++e) {
        d = std::min(d, edge_surfaces_clearance4(l.vertex(e), l.vertex(e + 1), s));
        if (matter) d = std::min(d, edge_regions_clearance4(l.vertex(e), l.vertex(e + 1), s));
    }
    return d;
}

/// Spatial room around the two edges at vertex i of loop l.
double vertex_spatial_clearance(const Loop& l, std::size_t i, const Scene& s) {
    const std::size_t n = l.size();
    const Point3 v = spatial(l.vertex(i));
    const Point3 prev = spatial(l.vertex(i + n - 1)), next = spatial(l.vertex(i + 1));
    double d = kInf;
    for (const auto& other : s.all_loops()) {
        const bool same = other.id == l.id;
        for (std::size_t f = 0; f < other.size(); ++f) {
            const Point3 a = spatial(other.vertex(f)), b = spatial(other.vertex(f + 1));
            if (same) {
                if (f == i || f == (i + n - 1) % n) continue;  // the moving edges
                if (f == (i + 1) % n || f == (i + n - 2) % n) {
                    d = std::min(d, point_segment_distance(v, a, b));
                    continue;
                }
            }
            d = std::min({d, segment_segment_distance(prev, v, a, b), segment_segment_distance(v, next, a, b)});
        }
    }
    for (const auto& m : s.surfaces) {
        for (const auto& e : boundary_edges(m.triangles)) {
            const Point3 a = spatial(m.vertices[e[0]]), b = spatial(m.vertices[e[1]]);
            d = std::min({d, segment_segment_distance(prev, v, a, b), segment_segment_distance(v, next, a, b)});
        }
    }
    return d;
}

struct Sampler {
    const Scene& s;
    const FuzzOptions& opts;
    Rng& rng;

    double scene_scale() const {
        double r = 1.0;
        for (const auto& l : s.all_loops())
            for (const auto& v : l.vertices) r = std::max(r, norm(spatial(v)));
        return r;
    }

    Point3 random_direction() {
        for (;;) {
            const Point3 v{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
            const double n = norm(v);
            if (n > 0.1 && n <= 1.0) return v * (1.0 / n);
        }
    }

    std::optional<Move> spatial_rigid() {
        Move m;
        m.kind = MoveKind::SpatialRigid;
        Point3 c{};
        std::size_t count = 0;
        for (const auto& l : s.all_loops())
            for (const auto& v : l.vertices) {
                c += spatial(v);
                ++count;
            }
        if (count) c *= 1.0 / static_cast<double>(count);
        m.motion.rotation = Rotation::random(rng);
        m.motion.center = c;
        m.motion.translation = random_direction() * rng.uniform(0.0, 1.0);
        m.bound = kInf;
        return m;
    }

    const Loop& random_loop(const std::vector<Loop>& loops) { return loops[rng.index(loops.size())]; }

    std::optional<Move> time_translate() {
        const auto loops = s.all_loops();
        if (loops.empty()) return std::nullopt;
        const Loop& l = random_loop(loops);
        Move m;
        m.kind = MoveKind::TimeTranslateComponent;
        m.target = l.id;
        if (opts.adversarial) {
            m.bound = kInf;
            const TauExtent e = tau_extent(l);
            m.amount = rng.uniform(-1, 1) * (3.0 + e.hi - e.lo);
            return m;
        }
        const double gap = std::min({crossing_time_gaps(s).at(l.id), ordering_gap(s, l), loop_clearance4(l, s)});
        m.bound = 0.5 * gap;
        if (!(m.bound > s.tolerance)) return std::nullopt;
        const double cap = std::min(m.bound, 1.0);
        m.amount = rng.sign() * rng.uniform(0.05, 0.9) * cap;
        return m;
    }

    std::optional<Move> vertex_jitter() {
        const auto loops = s.all_loops();
        if (loops.empty()) return std::nullopt;
        const Loop& l = random_loop(loops);
        const std::size_t i = rng.index(l.size());
        Move m;
        m.kind = MoveKind::VertexJitter;
        m.target = l.id;
        m.index = i;
        const Point3 dir = random_direction();
        if (opts.adversarial) {
            m.bound = kInf;
            const double r = rng.uniform(0.1, 1.0) * scene_scale();
            m.delta = {{rng.uniform(-1, 1) * r, dir[0] * r, dir[1] * r, dir[2] * r}};
            return m;
        }
        const std::size_t n = l.size();
        const Point4 prev = l.vertex(i + n - 1), v = l.vertex(i), next = l.vertex(i + 1);
        double room = vertex_spatial_clearance(l, i, s);
        room = std::min({room, edge_surfaces_clearance4(prev, v, s), edge_surfaces_clearance4(v, next, s)});
        if (is_matter(s, l.id)) {
            room = std::min({room, edge_regions_clearance4(prev, v, s), edge_regions_clearance4(v, next, s)});
            for (const auto& node : s.nodes) {
                if (node.loop_id != l.id) continue;
                if (node.edge != i && node.edge != (i + n - 1) % n) continue;
                room = std::min(room, node_region_clearance(spatial(l.point_at(node.edge, node.u)), s));
            }
        }
        const double time_room = std::min(crossing_time_gaps(s).at(l.id), ordering_gap(s, l));
        m.bound = 0.5 * room;
        if (!(m.bound > s.tolerance)) return std::nullopt;
        const double r = rng.uniform(0.05, 0.9) * std::min(m.bound, 1.0);
        const double t = std::clamp(rng.uniform(-1, 1) * r, -0.45 * time_room, 0.45 * time_room);
        const double spatial_r = std::sqrt(std::max(0.0, r * r - t * t));
        m.delta = {{t, dir[0] * spatial_r, dir[1] * spatial_r, dir[2] * spatial_r}};
        return m;
    }

    std::optional<Move> edge_subdivide() {
        const auto loops = s.all_loops();
        if (loops.empty()) return std::nullopt;
        const Loop& l = random_loop(loops);
        Move m;
        m.kind = MoveKind::EdgeSubdivide;
        m.target = l.id;
        m.index = rng.index(l.size());
        m.amount = rng.uniform(0.25, 0.75);
        return m;
    }

    std::optional<Move> node_slide() {
        if (s.nodes.empty()) return std::nullopt;
        Move m;
        m.kind = MoveKind::NodeSlide;
        m.index = rng.index(s.nodes.size());
        const Node& node = s.nodes[m.index];
        Scene copy = s;
        const Loop* l = find_loop(copy, node.loop_id);
        if (!l) return std::nullopt;
        double total = 0.0;
        for (std::size_t e = 0; e < l->size(); ++e) total += distance(spatial(l->vertex(e)), spatial(l->vertex(e + 1)));
        const double cap = 0.5 * total / static_cast<double>(l->size());
        if (opts.adversarial) {
            m.bound = kInf;
            m.amount = rng.uniform(-0.5, 0.5) * total;
            return m;
        }
        m.bound = std::min(cap, 0.5 * node_region_clearance(spatial(l->point_at(node.edge, node.u)), s));
        if (!(m.bound > s.tolerance)) return std::nullopt;
        m.amount = rng.sign() * rng.uniform(0.05, 0.9) * m.bound;
        return m;
    }

    std::optional<Move> region_rigid() {
        if (s.regions.empty()) return std::nullopt;
        Move m;
        m.kind = MoveKind::RegionRigid;
        const std::size_t k = rng.index(s.regions.size());
        const Region3& g = s.regions[k];
        m.target = g.id;
        Point3 c{};
        for (const auto& v : g.vertices) c += v;
        c *= 1.0 / static_cast<double>(g.vertices.size());
        double rho = 0.0;
        for (const auto& v : g.vertices) rho = std::max(rho, distance(v, c));
        double room = kInf;
        if (opts.adversarial) {
            room = 2.0 * (rho + 1.0);
        } else {
            for (const auto& node : s.nodes) {
                for (const auto& l : s.matter.loops)
                    if (l.id == node.loop_id && node.edge < l.size())
                        room = std::min(room, node_region_clearance(spatial(l.point_at(node.edge, node.u)), s, &g));
            }
            for (const auto& l : s.matter.loops)
                for (std::size_t e = 0; e < l.size(); ++e)
                    room = std::min(room, edge_regions_clearance4(l.vertex(e), l.vertex(e + 1), s, &g));
            room = std::min(room, 1.0);
        }
        m.bound = opts.adversarial ? kInf : 0.5 * room;
        if (!opts.adversarial && !(m.bound > s.tolerance)) return std::nullopt;
        const double budget = opts.adversarial ? room : 0.9 * m.bound;
        const double share = rng.uniform(0.2, 0.8);
        m.motion.center = c;
        m.motion.translation = random_direction() * (rng.uniform(0.05, 1.0) * share * budget);
        const double angle = rng.uniform(0.05, 1.0) * (1.0 - share) * budget / std::max(rho, 1e-12);
        m.motion.rotation = Rotation::about_axis(random_direction(), angle);
        return m;
    }

    std::optional<Move> sample(MoveKind k) {
        switch (k) {
            case MoveKind::SpatialRigid: return spatial_rigid();
            case MoveKind::TimeTranslateComponent: return time_translate();
            case MoveKind::VertexJitter: return vertex_jitter();
            case MoveKind::EdgeSubdivide: return edge_subdivide();
            case MoveKind::NodeSlide: return node_slide();
            case MoveKind::RegionRigid: return region_rigid();
        }
        return std::nullopt;
    }
};

Node slide_node(const Node& node, const Loop& l, double amount) {
    Node out = node;
    const std::size_t n = l.size();
    auto len = [&](std::size_t e) { return distance(spatial(l.vertex(e)), spatial(l.vertex(e + 1))); };
    double left = amount;
    // Bounded walk; a slide never wraps the loop more than once.
    for (std::size_t guard = 0; guard < 2 * n + 2; ++guard) {
        const double L = len(out.edge);
        if (left >= 0) {
            const double room = (1.0 - out.u) * L;
            if (left < room) {
                out.u += left / L;
                break;
            }
            left -= room;
            out.edge = (out.edge + 1) % n;
            out.u = 0.0;
        } else {
            const double room = out.u * L;
            if (-left < room) {
                out.u += left / L;
                break;
            }
            left += room;
            out.edge = (out.edge + n - 1) % n;
            out.u = 1.0;
        }
    }
    out.u = std::clamp(out.u, 1e-6, 1.0 - 1e-6);
    return out;
}

}  // namespace

Move generate_move(const Scene& s, std::uint64_t seed, const FuzzOptions& opts) {
    Rng rng(seed);
    std::vector<MoveKind> kinds = opts.moves;
    // Fisher-Yates with the platform-independent index draw.
    for (std::size_t i = kinds.size(); i > 1; --i) std::swap(kinds[i - 1], kinds[rng.index(i)]);
    Sampler sampler{s, opts, rng};
    for (MoveKind k : kinds) {
        if (auto m = sampler.sample(k)) {
            m->seed = seed;
            return *m;
        }
    }
    throw Error(ErrorKind::NoAdmissibleMove, "no enabled move has room above the tolerance");
}

Scene apply_move(const Scene& s, const Move& m) {
    Scene out = s;
    switch (m.kind) {
        case MoveKind::SpatialRigid:
            for (auto* h : {&out.matter, &out.geometric})
                for (auto& l : h->loops) l = transformed(l, m.motion);
            for (auto& surf : out.surfaces)
                for (auto& v : surf.vertices) v = m.motion.apply(v);
            for (auto& g : out.regions)
                for (auto& v : g.vertices) v = m.motion.apply(v);
            break;
        case MoveKind::TimeTranslateComponent:
            if (Loop* l = find_loop(out, m.target))
                for (auto& v : l->vertices) v[0] += m.amount;
            break;
        case MoveKind::VertexJitter:
            if (Loop* l = find_loop(out, m.target)) l->vertices[m.index % l->size()] += m.delta;
            break;
        case MoveKind::EdgeSubdivide:
            if (Loop* l = find_loop(out, m.target)) {
                const std::size_t e = m.index % l->size();
                const double u = m.amount;
                l->vertices.insert(l->vertices.begin() + static_cast<std::ptrdiff_t>(e + 1), l->point_at(e, u));
                for (auto& node : out.nodes) {
                    if (node.loop_id != m.target) continue;
                    if (node.edge > e) {
                        ++node.edge;
                    } else if (node.edge == e) {
                        if (node.u < u) {
                            node.u /= u;
                        } else {
                            node.edge = e + 1;
                            node.u = (node.u - u) / (1.0 - u);
                        }
                    }
                }
            }
            break;
        case MoveKind::NodeSlide:
            if (m.index < out.nodes.size()) {
                Node& node = out.nodes[m.index];
                if (const Loop* l = find_loop(out, node.loop_id)) node = slide_node(node, *l, m.amount);
            }
            break;
        case MoveKind::RegionRigid:
            for (auto& g : out.regions)
                if (g.id == m.target)
                    for (auto& v : g.vertices) v = m.motion.apply(v);
            break;
    }
    return out;
}

namespace {

std::string str(int v) { return std::to_string(v); }

std::string str(const PiercingNumber& nu) {
    std::string s = std::to_string(nu.value) + " " + to_string(nu.exactness);
    if (nu.lower_bound) s += " >= " + std::to_string(*nu.lower_bound);
    return s;
}

void compare_invariants(const InvariantReport& a, const InvariantReport& b, StepReport& rep) {
    auto changed = [&](std::string name, std::string before, std::string after) {
        rep.violations.push_back({StepViolationKind::InvariantChanged, name + ": " + before + " -> " + after, name,
                                  std::move(before), std::move(after)});
    };
    auto opt = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("absent"); };
    if (a.sk != b.sk) changed("sk", opt(a.sk), opt(b.sk));
    if (a.sk_invariant != b.sk_invariant) changed("sk_status", a.sk_invariant.value_or(false) ? "Invariant" : "NotAnInvariant",
                                                  b.sk_invariant.value_or(false) ? "Invariant" : "NotAnInvariant");
    for (const auto& [sid, row] : a.lk_surface) {
        for (const auto& [axis, v] : row) {
            auto it = b.lk_surface.find(sid);
            const bool present = it != b.lk_surface.end() && it->second.count(axis);
            if (!present || it->second.at(axis) != v)
                changed("lk_surface." + sid + "." + axis, str(v), present ? str(it->second.at(axis)) : "absent");
        }
    }
    for (const auto& [sid, nu] : a.nu_S) {
        auto it = b.nu_S.find(sid);
        if (it == b.nu_S.end()) {
            changed("nu_S." + sid, str(nu), "absent");
            continue;
        }
        // For surfaces with boundary only the bound is an invariant; the count
        // belongs to one representative.
        const bool same = nu.exactness == Exactness::Exact
                              ? nu == it->second
                              : it->second.exactness == nu.exactness && it->second.lower_bound == nu.lower_bound;
        if (!same) changed("nu_S." + sid, str(nu), str(it->second));
    }
    for (const auto& [rid, v] : a.nu_R) {
        auto it = b.nu_R.find(rid);
        if (it == b.nu_R.end() || it->second != v)
            changed("nu_R." + rid, str(v), it == b.nu_R.end() ? "absent" : str(it->second));
    }
}

std::string containment_state(const Point3& p, const Region3& g, double tol) {
    try {
        return to_string(point_in_region(p, g, tol));
    } catch (const Error& e) {
        return std::string(to_string(e.kind()));
    }
}

/// When exactly one loop vertex moved in space, the straight-line homotopy
/// sweeps the two triangles (prev, old, new) and (old, new, next). Any other
/// edge meeting them means a strand passed through another one.
std::optional<std::string> strand_passage(const Scene& before, const Scene& after) {
    const auto lb = before.all_loops();
    const auto la = after.all_loops();
    if (lb.size() != la.size()) return std::nullopt;
    std::size_t which = 0, vertex = 0, moved = 0;
    for (std::size_t i = 0; i < lb.size(); ++i) {
        if (lb[i].size() != la[i].size()) return std::nullopt;
        for (std::size_t k = 0; k < lb[i].size(); ++k)
            if (spatial(lb[i].vertices[k]) != spatial(la[i].vertices[k])) {
                which = i;
                vertex = k;
                ++moved;
            }
    }
    if (moved != 1) return std::nullopt;
    const Loop& l = lb[which];
    const std::size_t n = l.size();
    const Point3 old_p = spatial(l.vertex(vertex)), new_p = spatial(la[which].vertex(vertex));
    const Point3 prev = spatial(l.vertex(vertex + n - 1)), next = spatial(l.vertex(vertex + 1));
    const double tol = after.tolerance;
    for (std::size_t i = 0; i < lb.size(); ++i) {
        for (std::size_t e = 0; e < lb[i].size(); ++e) {
            // edges sharing a vertex with the swept triangles touch them trivially
            if (i == which && (e + 2 + n - vertex) % n <= 3) continue;
            const Point3 a = spatial(lb[i].vertex(e)), b = spatial(lb[i].vertex(e + 1));
            if (segment_triangle_distance(a, b, prev, old_p, new_p) <= tol ||
                segment_triangle_distance(a, b, old_p, new_p, next) <= tol)
                return "vertex " + std::to_string(vertex) + " of '" + l.id + "' sweeps through '" + lb[i].id +
                       "' edge " + std::to_string(e);
        }
    }
    return std::nullopt;
}

StepReport check_step_impl(const Scene& before, const InvariantReport& before_inv, const Scene& after) {
    StepReport rep;
    auto add = [&](StepViolationKind k, std::string detail) { rep.violations.push_back({k, std::move(detail), {}, {}, {}}); };

    const OrderMatrix ob = order_matrix(before.matter, before.geometric);
    const OrderMatrix oa = order_matrix(after.matter, after.geometric);
    if (ob != oa) {
        for (std::size_t u = 0; u < std::min(ob.size(), oa.size()); ++u)
            for (std::size_t v = 0; v < std::min(ob[u].size(), oa[u].size()); ++v)
                if (ob[u][v] != oa[u][v])
                    add(StepViolationKind::OrderingFlipped,
                        "'" + after.matter.loops[u].id + "' vs '" + after.geometric.loops[v].id + "': " +
                            to_string(ob[u][v]) + " -> " + to_string(oa[u][v]));
        if (ob.size() != oa.size()) add(StepViolationKind::OrderingFlipped, "component count changed");
    }

    const auto loops_b = before.all_loops();
    const auto loops_a = after.all_loops();
    for (std::size_t k = 0; k < std::min(before.surfaces.size(), after.surfaces.size()); ++k) {
        const Surface4& sb = before.surfaces[k];
        const Surface4& sa = after.surfaces[k];
        if (is_closed(sb)) continue;
        for (std::size_t i = 0; i < std::min(loops_b.size(), loops_a.size()); ++i) {
            const TimeOrder b = time_order(tau_extent(loops_b[i]), tau_extent(sb));
            const TimeOrder a = time_order(tau_extent(loops_a[i]), tau_extent(sa));
            if (a != b)
                add(StepViolationKind::SurfaceBoundaryOrderLost,
                    "'" + loops_a[i].id + "' vs surface '" + sa.id + "': " + to_string(b) + " -> " + to_string(a));
        }
    }

    const double tol = after.tolerance;
    for (std::size_t k = 0; k < std::min(before.regions.size(), after.regions.size()); ++k) {
        for (std::size_t i = 0; i < std::min(before.nodes.size(), after.nodes.size()); ++i) {
            std::string sb, sa;
            try {
                sb = containment_state(node_position(before.nodes[i], before.matter), before.regions[k], tol);
                sa = containment_state(node_position(after.nodes[i], after.matter), after.regions[k], tol);
            } catch (const Error& e) {
                sa = e.what();
            }
            if (sa != sb || (sa != to_string(Containment::Inside) && sa != to_string(Containment::Outside)))
                add(StepViolationKind::NodeCrossedBoundary, "node " + std::to_string(i) + " in region '" +
                                                                after.regions[k].id + "': " + sb + " -> " + sa);
        }
    }

    if (const auto passage = strand_passage(before, after)) add(StepViolationKind::TimeLikeLost, *passage);

    const InvariantReport after_inv = compute_invariants(after);
    for (const auto& v : after_inv.validation.violations) {
        switch (v.kind) {
            case ViolationKind::Incomparable:
                if (!rep.inadmissible()) add(StepViolationKind::OrderingFlipped, v.detail);
                break;
            case ViolationKind::SurfaceOrder: add(StepViolationKind::SurfaceBoundaryOrderLost, v.detail); break;
            case ViolationKind::OnBoundary: add(StepViolationKind::NodeCrossedBoundary, v.detail); break;
            default: add(StepViolationKind::TimeLikeLost, std::string(to_string(v.kind)) + ": " + v.detail);
        }
    }
    if (after_inv.validation.ok()) compare_invariants(before_inv, after_inv, rep);
    return rep;
}

}  // namespace

StepReport check_step(const Scene& before, const Scene& after) {
    return check_step_impl(before, compute_invariants(before), after);
}

FuzzSummary fuzz(const Scene& s, std::size_t n_steps, std::uint64_t seed, const FuzzOptions& opts) {
    FuzzSummary sum;
    sum.seed = seed;
    sum.invariants = compute_invariants(s);
    if (!sum.invariants.validation.ok()) {
        const auto& v = sum.invariants.validation.violations.front();
        throw Error(ErrorKind::InvalidInput, "scene does not validate: " + std::string(to_string(v.kind)) + ": " + v.detail);
    }
    sum.invariants.provenance.seed = seed;
    Scene cur = s;
    InvariantReport cur_inv = compute_invariants(s);
    auto done = [&] {
        if (opts.until_accepted) return sum.accepted >= n_steps || sum.attempts >= opts.max_attempts;
        return sum.attempts >= n_steps;
    };
    while (!done()) {
        const std::size_t step = sum.attempts++;
        const Move m = generate_move(cur, mix_seed(seed, step), opts);
        Scene next = apply_move(cur, m);
        StepReport rep = check_step_impl(cur, cur_inv, next);
        rep.move = m;
        if (rep.inadmissible()) {
            ++sum.skipped;
            ++sum.skipped_by_reason[to_string(rep.violations.front().kind)];
            continue;
        }
        if (rep.invariant_changed()) throw InvarianceBrokenError(step, std::move(rep));
        ++sum.accepted;
        ++sum.accepted_by_kind[to_string(m.kind)];
        cur = std::move(next);
    }
    sum.final_scene = std::move(cur);
    return sum;
}

}  // namespace qgi
