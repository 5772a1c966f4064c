#include <doctest.h>

#include <cmath>

#include "qgi/diagram.hpp"
#include "qgi/errors.hpp"
#include "support/oracles.hpp"
#include "support/shapes.hpp"

using namespace qgi;

namespace {

std::pair<Loop, Loop> rotated_hopf(std::uint64_t seed) {
    Rng rng(seed);
    const auto m = shapes::random_motion(rng, 0.5);
    auto [a, b] = shapes::hopf(0.0, 0.0);
    return {shapes::moved(a, m), shapes::moved(b, m)};
}

}  // namespace

TEST_CASE("crossing sign follows over x under") {
    CHECK(crossing_sign({{1, 0}}, {{0, 1}}) == 1);
    CHECK(crossing_sign({{0, 1}}, {{1, 0}}) == -1);
    CHECK_THROWS_AS(crossing_sign({{1, 0}}, {{2, 0}}), Error);
}

TEST_CASE("hopf diagram matches the hand tally on every plane") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto [a, b] = rotated_hopf(seed);
        const Polyline3 pa = spatial_projection(a), pb = spatial_projection(b);
        for (Plane p : kAllPlanes) {
            const auto t = oracles::tally(a, b, index_of(p));
            const Polyline3 link[] = {pa, pb};
            const Diagram d = build_diagram(link, p, kDefaultTolerance);
            int inter = 0;
            for (const auto& c : d.crossings) inter += c.inter_component;
            CHECK(inter == t.count);
            CHECK(lk_link(pa, pb, p) == t.sign_sum);
        }
    }
}

TEST_CASE("crossing-sum lk is twice the Gauss integral") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto [a, b] = rotated_hopf(seed);
        const double q = oracles::gauss_quadrature(oracles::spatial(a), oracles::spatial(b));
        const int gauss = static_cast<int>(std::lround(q));
        CHECK(std::abs(gauss) == 1);
        CHECK(gauss_lk_oracle(spatial_projection(a), spatial_projection(b)) == gauss);
        CHECK(lk_link(spatial_projection(a), spatial_projection(b), Plane::S2) == 2 * gauss);
    }
    Rng rng(99);
    const auto m = shapes::random_motion(rng);
    auto [a, b] = shapes::torus_pair(0, 0);
    a = shapes::moved(a, m);
    b = shapes::moved(b, m);
    const int gauss = static_cast<int>(std::lround(oracles::gauss_quadrature(oracles::spatial(a), oracles::spatial(b), 10)));
    CHECK(std::abs(gauss) == 2);
    CHECK(lk_link(spatial_projection(a), spatial_projection(b), Plane::S1) == 2 * gauss);
}

TEST_CASE("reversing one component negates lk") {
    const auto [a, b] = rotated_hopf(3);
    const int lk = lk_link(spatial_projection(a), spatial_projection(b), Plane::S3);
    CHECK(lk_link(spatial_projection(a), spatial_projection(shapes::reversed(b)), Plane::S3) == -lk);
}

TEST_CASE("split link has no inter-component crossings") {
    Rng rng(5);
    const auto m = shapes::random_motion(rng);
    const Loop a = shapes::moved(shapes::circle("a", {{0, 0, 0}}, shapes::e1, shapes::e2, 1, shapes::constant_time(0)), m);
    const Loop b = shapes::moved(shapes::circle("b", {{5, 0, 0}}, shapes::e1, shapes::e2, 1, shapes::constant_time(0)), m);
    for (Plane p : kAllPlanes) CHECK(lk_link(spatial_projection(a), spatial_projection(b), p) == 0);
}

TEST_CASE("axis-aligned circles give a degenerate diagram") {
    const auto [a, b] = shapes::hopf(0, 0);
    const Polyline3 link[] = {spatial_projection(a), spatial_projection(b)};
    try {
        build_diagram(link, Plane::S3, kDefaultTolerance);
        FAIL("expected DegenerateDiagram");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateDiagram);
    }
}
