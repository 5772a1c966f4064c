#include "qgi/transform.hpp"

#include <cmath>
#include <numbers>

namespace qgi {

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
    const double n = std::sqrt(w * w + x * x + y * y + z * z);
    return Rotation{{w / n, x / n, y / n, z / n}};
}

Rotation Rotation::about_axis(const Point3& axis, double angle) {
    const Point3 a = axis * (1.0 / norm(axis));
    const double s = std::sin(angle / 2);
    return from_quaternion(std::cos(angle / 2), a[0] * s, a[1] * s, a[2] * s);
}

Rotation Rotation::random(Rng& rng) {
    // Shoemake's subgroup algorithm.
    const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
    const double r1 = std::sqrt(1 - u1), r2 = std::sqrt(u1);
    const double t1 = 2 * std::numbers::pi * u2, t2 = 2 * std::numbers::pi * u3;
    return from_quaternion(r2 * std::cos(t2), r1 * std::sin(t1), r1 * std::cos(t1), r2 * std::sin(t2));
}

Point3 Rotation::apply(const Point3& p) const {
    const auto [w, x, y, z] = q;
    const Point3 u{{x, y, z}};
    // p' = p + 2w (u x p) + 2 u x (u x p)
    const Point3 t = cross(u, p) * 2.0;
    return p + t * w + cross(u, t);
}

Point4 Rotation::apply(const Point4& p) const {
    const Point3 s = apply(spatial(p));
    return {{p[0], s[0], s[1], s[2]}};
}

Loop transformed(const Loop& loop, const RigidMotion& m) {
    Loop out{loop.id, {}};
    out.vertices.reserve(loop.size());
    for (const auto& v : loop.vertices) out.vertices.push_back(m.apply(v));
    return out;
}

}  // namespace qgi
