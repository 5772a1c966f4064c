#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace qgi {

/// Fixed-size real vector used for points in R^2, R^3 and R x R^3.
template <std::size_t N>
struct Vec {
    std::array<double, N> c{};

    constexpr double& operator[](std::size_t i) { return c[i]; }
    constexpr double operator[](std::size_t i) const { return c[i]; }

    constexpr Vec& operator+=(const Vec& o) {
        for (std::size_t i = 0; i < N; ++i) c[i] += o.c[i];
        return *this;
    }
    constexpr Vec& operator-=(const Vec& o) {
        for (std::size_t i = 0; i < N; ++i) c[i] -= o.c[i];
        return *this;
    }
    constexpr Vec& operator*=(double s) {
        for (auto& x : c) x *= s;
        return *this;
    }

    friend constexpr Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend constexpr Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend constexpr Vec operator*(Vec a, double s) { return a *= s; }
    friend constexpr Vec operator*(double s, Vec a) { return a *= s; }
    friend constexpr Vec operator-(Vec a) { return a *= -1.0; }
    friend constexpr bool operator==(const Vec&, const Vec&) = default;
};

using Point2 = Vec<2>;
using Point3 = Vec<3>;
/// (x0, x1, x2, x3) with x0 the time coordinate.
using Point4 = Vec<4>;

template <std::size_t N>
constexpr double dot(const Vec<N>& a, const Vec<N>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += a[i] * b[i];
    return s;
}

template <std::size_t N>
double norm(const Vec<N>& a) {
    return std::sqrt(dot(a, a));
}

template <std::size_t N>
double distance(const Vec<N>& a, const Vec<N>& b) {
    return norm(a - b);
}

template <std::size_t N>
constexpr Vec<N> lerp(const Vec<N>& a, const Vec<N>& b, double t) {
    return a + (b - a) * t;
}

template <std::size_t N>
bool all_finite(const Vec<N>& a) {
    for (double x : a.c)
        if (!std::isfinite(x)) return false;
    return true;
}

constexpr Point3 cross(const Point3& a, const Point3& b) {
    return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}

/// z-component of the planar cross product.
constexpr double cross(const Point2& a, const Point2& b) { return a[0] * b[1] - a[1] * b[0]; }

inline double time_of(const Point4& p) { return p[0]; }

}  // namespace qgi
