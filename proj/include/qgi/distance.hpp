#pragma once

// Euclidean distances between simplices of dimension <= 2 in R^N.
//
// Each query minimises |base + M x|^2 over a product of simplices by visiting
// every face of the feasible polytope, solving the unconstrained problem on
// the face's affine hull and keeping feasible solutions. Faces whose normal
// equations are singular are covered by their lower-dimensional sub-faces.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "qgi/vec.hpp"

namespace qgi {

namespace detail {

/// Affine face of the parameter polytope: x = origin + sum_j basis[j] * y_j.
template <std::size_t K>
struct Face {
    std::array<double, K> origin{};
    std::vector<std::array<double, K>> basis;
};

inline bool solve_small(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
    const std::size_t n = b.size();
    double scale = 0.0;
    for (const auto& row : a)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return n == 0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) <= 1e-13 * scale) return false;
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return true;
}

template <std::size_t N, std::size_t K, typename Feasible>
double min_over_faces(const Vec<N>& base, const std::array<Vec<N>, K>& cols,
                      const std::vector<Face<K>>& faces, Feasible feasible) {
    auto apply = [&](const std::array<double, K>& x) {
        Vec<N> r = base;
        for (std::size_t j = 0; j < K; ++j) r += cols[j] * x[j];
        return r;
    };
    double best = std::numeric_limits<double>::infinity();
    for (const auto& face : faces) {
        const std::size_t d = face.basis.size();
        const Vec<N> r0 = apply(face.origin);
        std::vector<Vec<N>> dirs(d);
        for (std::size_t j = 0; j < d; ++j) {
            Vec<N> v{};
            for (std::size_t k = 0; k < K; ++k) v += cols[k] * face.basis[j][k];
            dirs[j] = v;
        }
        std::vector<std::vector<double>> g(d, std::vector<double>(d));
        std::vector<double> rhs(d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) g[i][j] = dot(dirs[i], dirs[j]);
            rhs[i] = -dot(dirs[i], r0);
        }
        std::vector<double> y;
        if (!solve_small(g, rhs, y)) continue;
        std::array<double, K> x = face.origin;
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < K; ++k) x[k] += face.basis[j][k] * y[j];
        if (!feasible(x)) continue;
        best = std::min(best, norm(apply(x)));
    }
    return best;
}

constexpr double kFaceSlack = 1e-12;

}  // namespace detail

template <std::size_t N>
double point_segment_distance(const Vec<N>& p, const Vec<N>& a, const Vec<N>& b) {
    const Vec<N> d = b - a;
    const double dd = dot(d, d);
    double t = dd > 0.0 ? dot(p - a, d) / dd : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + d * t);
}

template <std::size_t N>
double segment_segment_distance(const Vec<N>& a0, const Vec<N>& a1, const Vec<N>& b0,
                                const Vec<N>& b1) {
    using F = detail::Face<2>;
    // x = (s, t): point a0 + s (a1 - a0) minus point b0 + t (b1 - b0)
    std::vector<F> faces;
    for (int si = 0; si < 3; ++si) {
        for (int ti = 0; ti < 3; ++ti) {
            F f;
            f.origin = {si == 2 ? 1.0 : 0.0, ti == 2 ? 1.0 : 0.0};
            if (si == 0) f.basis.push_back({1.0, 0.0});
            if (ti == 0) f.basis.push_back({0.0, 1.0});
            faces.push_back(f);
        }
    }
    const std::array<Vec<N>, 2> cols{a1 - a0, b0 - b1};
    auto feasible = [](const std::array<double, 2>& x) {
        constexpr double e = detail::kFaceSlack;
        return x[0] >= -e && x[0] <= 1 + e && x[1] >= -e && x[1] <= 1 + e;
    };
    return detail::min_over_faces<N, 2>(a0 - b0, cols, faces, feasible);
}

namespace detail {

/// Faces of the standard triangle {a, b >= 0, a + b <= 1} in (a, b) coordinates.
inline std::vector<std::pair<std::array<double, 2>, std::vector<std::array<double, 2>>>>
triangle_faces() {
    return {
        {{0, 0}, {{1, 0}, {0, 1}}},
        {{0, 0}, {{0, 1}}},
        {{0, 0}, {{1, 0}}},
        {{1, 0}, {{-1, 1}}},
        {{0, 0}, {}},
        {{1, 0}, {}},
        {{0, 1}, {}},
    };
}

inline bool in_triangle(double a, double b) {
    return a >= -kFaceSlack && b >= -kFaceSlack && a + b <= 1 + kFaceSlack;
}

}  // namespace detail

template <std::size_t N>
double point_triangle_distance(const Vec<N>& p, const Vec<N>& t0, const Vec<N>& t1,
                               const Vec<N>& t2) {
    using F = detail::Face<2>;
    std::vector<F> faces;
    for (const auto& [origin, basis] : detail::triangle_faces()) faces.push_back(F{origin, basis});
    const std::array<Vec<N>, 2> cols{t0 - t1, t0 - t2};
    auto feasible = [](const std::array<double, 2>& x) { return detail::in_triangle(x[0], x[1]); };
    return detail::min_over_faces<N, 2>(p - t0, cols, faces, feasible);
}

template <std::size_t N>
double segment_triangle_distance(const Vec<N>& a0, const Vec<N>& a1, const Vec<N>& t0,
                                 const Vec<N>& t1, const Vec<N>& t2) {
    using F = detail::Face<3>;
    std::vector<F> faces;
    for (int si = 0; si < 3; ++si) {
        for (const auto& [origin, basis] : detail::triangle_faces()) {
            F f;
            f.origin = {si == 2 ? 1.0 : 0.0, origin[0], origin[1]};
            if (si == 0) f.basis.push_back({1.0, 0.0, 0.0});
            for (const auto& b : basis) f.basis.push_back({0.0, b[0], b[1]});
            faces.push_back(f);
        }
    }
    // x = (s, a, b): a0 + s (a1 - a0) - (t0 + a (t1 - t0) + b (t2 - t0))
    const std::array<Vec<N>, 3> cols{a1 - a0, t0 - t1, t0 - t2};
    auto feasible = [](const std::array<double, 3>& x) {
        constexpr double e = detail::kFaceSlack;
        return x[0] >= -e && x[0] <= 1 + e && detail::in_triangle(x[1], x[2]);
    };
    return detail::min_over_faces<N, 3>(a0 - t0, cols, faces, feasible);
}

}  // namespace qgi
