#pragma once
// Test-side scene builders. Everything here is plain construction; no
// invariant code from the library is used.

#include <cmath>
#include <algorithm>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qgi/geom4.hpp"
#include "qgi/mesh.hpp"
#include "qgi/random.hpp"
#include "qgi/transform.hpp"

namespace shapes {

using qgi::Point3;
using qgi::Point4;

inline constexpr double kPi = std::numbers::pi;

using TimeFn = std::function<double(const Point3&)>;

inline TimeFn constant_time(double t) {
    return [t](const Point3&) { return t; };
}

inline Point4 at(double t, const Point3& x) { return {{t, x[0], x[1], x[2]}}; }

/// Circle center + r(cos a * u + sin a * v), counter-clockwise in the (u, v) frame.
inline qgi::Loop circle(std::string id, Point3 center, Point3 u, Point3 v, double r, const TimeFn& time,
                        int n = 24, double phase = 0.0) {
    qgi::Loop l{std::move(id), {}};
    for (int i = 0; i < n; ++i) {
        const double a = phase + 2 * kPi * i / n;
        const Point3 x = center + u * (r * std::cos(a)) + v * (r * std::sin(a));
        l.vertices.push_back(at(time(x), x));
    }
    return l;
}

inline const Point3 e1{{1, 0, 0}}, e2{{0, 1, 0}}, e3{{0, 0, 1}};

/// Axis-aligned Hopf pair: unit circle in the x1-x2 plane through the origin
/// and unit circle in the x1-x3 plane centred at (1,0,0).
inline std::pair<qgi::Loop, qgi::Loop> hopf(double t_first, double t_second, int n = 24) {
    return {circle("a", {{0, 0, 0}}, e1, e2, 1.0, constant_time(t_first), n),
            circle("b", {{1, 0, 0}}, e1, e3, 1.0, constant_time(t_second), n)};
}

/// Two parallel (1,2) curves on a torus of radii (R, r); classical linking number 2.
inline std::pair<qgi::Loop, qgi::Loop> torus_pair(double t_first, double t_second, int n = 64, double R = 2.0,
                                                  double r = 0.8) {
    auto make = [&](std::string id, double shift, double t) {
        qgi::Loop l{std::move(id), {}};
        for (int i = 0; i < n; ++i) {
            const double a = 2 * kPi * i / n;
            const double b = 2 * a + shift;
            const Point3 x{{(R + r * std::cos(b)) * std::cos(a), (R + r * std::cos(b)) * std::sin(a), r * std::sin(b)}};
            l.vertices.push_back(at(t, x));
        }
        return l;
    };
    return {make("a", 0.0, t_first), make("b", kPi, t_second)};
}

inline qgi::Loop moved(qgi::Loop l, const qgi::RigidMotion& m) { return qgi::transformed(l, m); }

inline qgi::Loop reversed(qgi::Loop l) {
    std::reverse(l.vertices.begin(), l.vertices.end());
    return l;
}

inline qgi::Loop retimed(qgi::Loop l, double dt) {
    for (auto& v : l.vertices) v[0] += dt;
    return l;
}

inline qgi::RigidMotion random_motion(qgi::Rng& rng, double shift = 0.0) {
    qgi::RigidMotion m;
    m.rotation = qgi::Rotation::random(rng);
    m.translation = Point3{{rng.uniform(-shift, shift), rng.uniform(-shift, shift), rng.uniform(-shift, shift)}};
    return m;
}

/// Icosphere-like UV sphere: `rings` latitude bands, `segs` longitudes, outward normals.
template <class Mesh>
Mesh uv_sphere_mesh(std::string id, Point3 center, double radius, int rings, int segs,
                    const std::function<typename decltype(Mesh::vertices)::value_type(const Point3&)>& vert) {
    Mesh m{std::move(id), {}, {}};
    m.vertices.push_back(vert(center + Point3{{0, 0, radius}}));
    for (int i = 1; i < rings; ++i) {
        const double th = kPi * i / rings;
        for (int j = 0; j < segs; ++j) {
            const double ph = 2 * kPi * j / segs + (i % 2 ? 0.0 : kPi / segs);
            m.vertices.push_back(vert(center + Point3{{radius * std::sin(th) * std::cos(ph),
                                                        radius * std::sin(th) * std::sin(ph), radius * std::cos(th)}}));
        }
    }
    m.vertices.push_back(vert(center + Point3{{0, 0, -radius}}));
    const std::size_t south = m.vertices.size() - 1;
    auto ring = [&](int i, int j) { return static_cast<std::size_t>(1 + (i - 1) * segs + ((j % segs) + segs) % segs); };
    for (int j = 0; j < segs; ++j) m.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i < rings - 1; ++i) {
        for (int j = 0; j < segs; ++j) {
            // odd rings are unshifted, even rings are rotated by half a step
            if (i % 2) {
                m.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i, j + 1)});
                m.triangles.push_back({ring(i, j + 1), ring(i + 1, j), ring(i + 1, j + 1)});
            } else {
                m.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
                m.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
            }
        }
    }
    for (int j = 0; j < segs; ++j) m.triangles.push_back({south, ring(rings - 1, j + 1), ring(rings - 1, j)});
    return m;
}

inline qgi::Surface4 sphere(std::string id, Point3 center, double radius, const TimeFn& time, int rings = 8,
                            int segs = 12) {
    return uv_sphere_mesh<qgi::Surface4>(std::move(id), center, radius, rings, segs,
                                         [&](const Point3& x) { return at(time(x), x); });
}

inline qgi::Region3 ball(std::string id, Point3 center, double radius, int rings = 8, int segs = 12) {
    return uv_sphere_mesh<qgi::Region3>(std::move(id), center, radius, rings, segs, [](const Point3& x) { return x; });
}

/// Flat disk with boundary oriented counter-clockwise in the (u, v) frame,
/// so its normal is u x v.
inline qgi::Surface4 disk(std::string id, Point3 center, Point3 u, Point3 v, double radius, const TimeFn& time,
                          int rings = 3, int segs = 16) {
    qgi::Surface4 s{std::move(id), {}, {}};
    s.vertices.push_back(at(time(center), center));
    for (int i = 1; i <= rings; ++i) {
        for (int j = 0; j < segs; ++j) {
            const double a = 2 * kPi * j / segs + (i % 2 ? 0.0 : kPi / segs);
            const Point3 x = center + u * (radius * i / rings * std::cos(a)) + v * (radius * i / rings * std::sin(a));
            s.vertices.push_back(at(time(x), x));
        }
    }
    auto ring = [&](int i, int j) { return static_cast<std::size_t>(1 + (i - 1) * segs + ((j % segs) + segs) % segs); };
    for (int j = 0; j < segs; ++j) s.triangles.push_back({0, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i < rings; ++i) {
        for (int j = 0; j < segs; ++j) {
            if (i % 2) {
                s.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
                s.triangles.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
            } else {
                s.triangles.push_back({ring(i, j), ring(i + 1, j - 1), ring(i + 1, j)});
                s.triangles.push_back({ring(i, j), ring(i + 1, j), ring(i, j + 1)});
            }
        }
    }
    return s;
}

inline qgi::Surface4 moved(qgi::Surface4 s, const qgi::RigidMotion& m) {
    for (auto& v : s.vertices) v = m.apply(v);
    return s;
}

inline qgi::Region3 moved(qgi::Region3 r, const qgi::RigidMotion& m) {
    for (auto& v : r.vertices) v = m.apply(v);
    return r;
}

/// What a chord of a coil does inside the unit sphere.
enum class Chord { Spanning, Removable };

/// Loop that threads the unit sphere once per chord. Chords run along x1 from
/// -2 to 2 at distance 0.3 from the x1 axis; connectors return outside at
/// distance 3. Spanning chords go from time -2 to +2 (so their inside part
/// crosses the sphere's whole time range when that range lies in (-0.9, 0.9));
/// removable chords sit at constant time `lift`.
inline qgi::Loop coil(std::string id, const std::vector<Chord>& chords, double lift = 1.5, int pieces = 8) {
    qgi::Loop l{std::move(id), {}};
    const int m = static_cast<int>(chords.size());
    for (int k = 0; k < m; ++k) {
        const double a = 2 * kPi * k / m + 0.37;
        const Point3 dir{{0, std::cos(a), std::sin(a)}};
        const bool span = chords[k] == Chord::Spanning;
        for (int i = 0; i <= pieces; ++i) {
            const double s = -2.0 + 4.0 * i / pieces;
            const double t = span ? s : lift;
            l.vertices.push_back(at(t, Point3{{s, 0, 0}} + dir * 0.3));
        }
        // return path outside: over to radius 3 and back to x1 = -2 at the next angle
        const double a2 = 2 * kPi * (k + 1) / m + 0.37;
        const Point3 dir2{{0, std::cos(a2), std::sin(a2)}};
        const double t_end = span ? 2.0 : lift;
        const double t_next = (chords[(k + 1) % m] == Chord::Spanning) ? -2.0 : lift;
        l.vertices.push_back(at(t_end, Point3{{2.6, 0, 0}} + dir * 3.0));
        const double am = 0.5 * (a + a2);
        l.vertices.push_back(at(0.5 * (t_end + t_next), Point3{{0, 3.2 * std::cos(am), 3.2 * std::sin(am)}}));
        l.vertices.push_back(at(t_next, Point3{{-2.6, 0, 0}} + dir2 * 3.0));
    }
    return l;
}

}  // namespace shapes
