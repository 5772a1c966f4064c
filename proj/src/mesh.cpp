#include "qgi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "qgi/distance.hpp"
#include "qgi/errors.hpp"
#include "qgi/predicates.hpp"
#include "qgi/random.hpp"

namespace qgi {

namespace {

using EdgeKey = std::pair<std::size_t, std::size_t>;

EdgeKey undirected(std::size_t a, std::size_t b) { return a < b ? EdgeKey{a, b} : EdgeKey{b, a}; }

/// Directed occurrences of every undirected edge.
std::map<EdgeKey, std::vector<std::array<std::size_t, 2>>> edge_uses(std::span<const Triangle> tris) {
    std::map<EdgeKey, std::vector<std::array<std::size_t, 2>>> uses;
    for (const auto& t : tris) {
        for (int k = 0; k < 3; ++k) {
            const std::size_t a = t[k], b = t[(k + 1) % 3];
            uses[undirected(a, b)].push_back({a, b});
        }
    }
    return uses;
}

std::size_t shared_vertices(const Triangle& s, const Triangle& t) {
    std::size_t n = 0;
    for (auto a : s)
        for (auto b : t) n += a == b;
    return n;
}

bool edge_meets_triangle(const Point3& p0, const Point3& p1, const std::vector<Point3>& v, const Triangle& t,
                         double tol) {
    return intersect_segment_triangle(p0, p1, v[t[0]], v[t[1]], v[t[2]], tol).kind !=
           SegmentTriangleHit::Kind::None;
}

/// True when triangles s and t meet somewhere other than their shared vertices.
bool triangles_clash(const std::vector<Point3>& v, const Triangle& s, const Triangle& t, double tol) {
    const std::size_t shared = shared_vertices(s, t);
    if (shared >= 2) return false;
    auto test = [&](const Triangle& from, const Triangle& against) {
        for (int k = 0; k < 3; ++k) {
            const std::size_t a = from[k], b = from[(k + 1) % 3];
            const bool touches = std::find(against.begin(), against.end(), a) != against.end() ||
                                 std::find(against.begin(), against.end(), b) != against.end();
            if (shared == 1 && touches) continue;
            if (edge_meets_triangle(v[a], v[b], v, against, tol)) return true;
        }
        return false;
    };
    return test(s, t) || test(t, s);
}

void validate_mesh(const std::string& what, const std::vector<Point3>& v, std::span<const Triangle> tris,
                   bool require_closed, ViolationKind kind, double tol, ValidationReport& r) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!all_finite(v[i])) r.add(kind, what + " vertex " + std::to_string(i) + " is not finite");
    if (tris.empty()) r.add(kind, what + " has no triangles");
    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& t = tris[i];
        if (t[0] >= v.size() || t[1] >= v.size() || t[2] >= v.size()) {
            r.add(kind, what + " triangle " + std::to_string(i) + " references a missing vertex");
        } else if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
            r.add(kind, what + " triangle " + std::to_string(i) + " repeats a vertex");
        }
    }
    if (!r.ok()) return;

    for (std::size_t i = 0; i < tris.size(); ++i) {
        const auto& t = tris[i];
        if (norm(cross(v[t[1]] - v[t[0]], v[t[2]] - v[t[0]])) <= tol)
            r.add(kind, what + " triangle " + std::to_string(i) + " is degenerate in space");
    }

    const auto uses = edge_uses(tris);
    std::map<std::size_t, int> boundary_out;
    for (const auto& [key, dirs] : uses) {
        const std::string name = what + " edge (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
        if (dirs.size() > 2) {
            r.add(kind, name + " is shared by more than two triangles");
        } else if (dirs.size() == 2 && dirs[0][0] == dirs[1][0]) {
            r.add(kind, name + " has inconsistent orientation");
        } else if (dirs.size() == 1) {
            if (require_closed) r.add(kind, name + " is a boundary edge of a closed mesh");
            if (++boundary_out[dirs[0][0]] > 1)
                r.add(kind, what + " boundary is pinched at vertex " + std::to_string(dirs[0][0]));
        }
    }
    if (!r.ok()) return;

    std::vector<std::array<Point3, 2>> boxes(tris.size());
    for (std::size_t i = 0; i < tris.size(); ++i) {
        Point3 lo = v[tris[i][0]], hi = lo;
        for (auto idx : tris[i])
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::min(lo[k], v[idx][k]);
                hi[k] = std::max(hi[k], v[idx][k]);
            }
        boxes[i] = {lo, hi};
    }
    for (std::size_t i = 0; i < tris.size(); ++i) {
        for (std::size_t j = i + 1; j < tris.size(); ++j) {
            bool apart = false;
            for (int k = 0; k < 3 && !apart; ++k)
                apart = boxes[i][1][k] + tol < boxes[j][0][k] || boxes[j][1][k] + tol < boxes[i][0][k];
            if (apart) continue;
            if (triangles_clash(v, tris[i], tris[j], tol)) {
                r.add(kind, what + " triangles " + std::to_string(i) + " and " + std::to_string(j) +
                                " intersect in space");
                return;
            }
        }
    }
}

const std::array<Point3, 8>& ray_directions() {
    static const std::array<Point3, 8> dirs = [] {
        std::array<Point3, 8> out{};
        Rng rng(0x5eed0fa11ULL);
        for (auto& d : out) {
            Point3 v{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
            while (norm(v) < 0.2) v = Point3{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)}};
            d = v * (1.0 / norm(v));
        }
        return out;
    }();
    return dirs;
}

}  // namespace

std::vector<std::array<std::size_t, 2>> boundary_edges(std::span<const Triangle> triangles) {
    std::vector<std::array<std::size_t, 2>> out;
    for (const auto& [key, dirs] : edge_uses(triangles))
        if (dirs.size() == 1) out.push_back(dirs[0]);
    return out;
}

bool is_closed(const Surface4& s) { return boundary_edges(s.triangles).empty(); }

std::vector<Loop> boundary_loops(const Surface4& s) {
    const auto edges = boundary_edges(s.triangles);
    std::map<std::size_t, std::size_t> next;
    for (const auto& e : edges) next[e[0]] = e[1];
    std::vector<Loop> loops;
    std::map<std::size_t, bool> used;
    for (const auto& [start, _] : next) {
        if (used[start]) continue;
        Loop loop{s.id + "/boundary" + std::to_string(loops.size()), {}};
        std::size_t v = start;
        while (!used[v]) {
            used[v] = true;
            loop.vertices.push_back(s.vertices[v]);
            auto it = next.find(v);
            if (it == next.end()) break;
            v = it->second;
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

std::vector<std::vector<std::size_t>> triangle_components(std::span<const Triangle> triangles) {
    std::vector<std::size_t> parent(triangles.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<EdgeKey, std::size_t> first_use;
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        for (int k = 0; k < 3; ++k) {
            const auto key = undirected(triangles[i][k], triangles[i][(k + 1) % 3]);
            auto [it, fresh] = first_use.emplace(key, i);
            if (!fresh) parent[find(i)] = find(it->second);
        }
    }
    std::map<std::size_t, std::size_t> slot;
    std::vector<std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < triangles.size(); ++i) {
        const std::size_t root = find(i);
        auto [it, fresh] = slot.emplace(root, comps.size());
        if (fresh) comps.emplace_back();
        comps[it->second].push_back(i);
    }
    return comps;
}

std::vector<Point3> spatial_vertices(const Surface4& s) {
    std::vector<Point3> out;
    out.reserve(s.vertices.size());
    for (const auto& v : s.vertices) out.push_back(spatial(v));
    return out;
}

ValidationReport validate_surface(const Surface4& s, double tol) {
    ValidationReport r;
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        if (!all_finite(s.vertices[i]))
            r.add(ViolationKind::SurfaceInvalid, "surface '" + s.id + "' vertex " + std::to_string(i) + " is not finite");
    if (!r.ok()) return r;
    validate_mesh("surface '" + s.id + "'", spatial_vertices(s), s.triangles, false, ViolationKind::SurfaceInvalid,
                  tol, r);
    return r;
}

ValidationReport validate_region(const Region3& region, double tol) {
    ValidationReport r;
    validate_mesh("region '" + region.id + "'", region.vertices, region.triangles, true,
                  ViolationKind::RegionInvalid, tol, r);
    return r;
}

std::string to_string(Containment c) {
    switch (c) {
        case Containment::Inside: return "Inside";
        case Containment::Outside: return "Outside";
        case Containment::OnBoundary: return "OnBoundary";
    }
    return "Outside";
}

double distance_to_mesh(const Point3& p, std::span<const Point3> v, std::span<const Triangle> tris) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& t : tris) best = std::min(best, point_triangle_distance(p, v[t[0]], v[t[1]], v[t[2]]));
    return best;
}

Containment point_in_mesh(const Point3& p, std::span<const Point3> v, std::span<const Triangle> tris, double tol) {
    if (tris.empty()) return Containment::Outside;
    if (distance_to_mesh(p, v, tris) <= tol) return Containment::OnBoundary;

    double reach = 0.0;
    for (const auto& t : tris)
        for (auto idx : t) reach = std::max(reach, distance(p, v[idx]));
    reach = 2.0 * reach + 1.0;

    for (const auto& dir : ray_directions()) {
        const Point3 far = p + dir * reach;
        int crossings = 0;
        bool clean = true;
        for (const auto& t : tris) {
            const auto hit = intersect_segment_triangle(p, far, v[t[0]], v[t[1]], v[t[2]], tol);
            if (hit.kind == SegmentTriangleHit::Kind::None) continue;
            if (hit.kind != SegmentTriangleHit::Kind::Proper) {
                clean = false;
                break;
            }
            ++crossings;
        }
        if (clean) return crossings % 2 ? Containment::Inside : Containment::Outside;
    }
    throw Error(ErrorKind::DegenerateRay, "every probe ray grazes the mesh");
}

}  // namespace qgi
