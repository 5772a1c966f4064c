#pragma once

#include <array>

#include "qgi/geom4.hpp"
#include "qgi/random.hpp"
#include "qgi/vec.hpp"

namespace qgi {

/// Spatial rotation stored as a unit quaternion (w, x, y, z).
struct Rotation {
    std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};

    Point3 apply(const Point3& p) const;
    /// Rotates the spatial part, leaves the time coordinate alone.
    Point4 apply(const Point4& p) const;

    static Rotation from_quaternion(double w, double x, double y, double z);
    static Rotation about_axis(const Point3& axis, double angle);
    /// Uniformly distributed rotation.
    static Rotation random(Rng& rng);
};

/// Rotation about `center` followed by a translation; time is untouched.
struct RigidMotion {
    Rotation rotation;
    Point3 center{};
    Point3 translation{};

    Point3 apply(const Point3& p) const { return rotation.apply(p - center) + center + translation; }
    Point4 apply(const Point4& p) const {
        const Point3 s = apply(spatial(p));
        return {{p[0], s[0], s[1], s[2]}};
    }
};

Loop transformed(const Loop& loop, const RigidMotion& m);

}  // namespace qgi
