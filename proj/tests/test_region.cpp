#include <doctest.h>

#include "qgi/errors.hpp"
#include "qgi/framing_region.hpp"
#include "support/shapes.hpp"

using namespace qgi;

namespace {

Hyperlink ring(double t = 1.0) {
    return {{shapes::circle("m", {{0, 0, 0}}, shapes::e1, shapes::e2, 1.0, shapes::constant_time(t))}};
}

/// Nodes at the midpoints of the given edges, all with the same sign.
FramedHyperlink with_nodes(std::vector<std::size_t> edges, int sign = 1, double t = 1.0) {
    FramedHyperlink f{ring(t), {}};
    for (auto e : edges) f.nodes.push_back({"m", e, 0.5, sign});
    return f;
}

}  // namespace

TEST_CASE("confinement number counts nodes inside the ball") {
    Rng rng(8);
    for (int it = 0; it < 20; ++it) {
        const Point3 c{{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-0.3, 0.3)}};
        const double r = rng.uniform(0.3, 1.2);
        const Region3 ball = shapes::ball("R", c, r, 10, 16);
        FramedHyperlink f = with_nodes({1, 5, 9, 13, 17, 21});
        int expected = 0;
        bool near = false;
        for (const auto& n : f.nodes) {
            const double d = distance(node_position(n, f.hyperlink), c);
            near = near || (d > 0.93 * r && d < 1.01 * r);
            expected += d < r;
        }
        if (near) continue;
        CHECK(confinement_number(f, ball) == expected);
    }
}

TEST_CASE("a region with two balls counts both") {
    Region3 r = shapes::ball("R", {{1, 0, 0}}, 0.3);
    const Region3 b = shapes::ball("B", {{-1, 0, 0}}, 0.3);
    const std::size_t off = r.vertices.size();
    r.vertices.insert(r.vertices.end(), b.vertices.begin(), b.vertices.end());
    for (auto t : b.triangles) r.triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
    CHECK(confinement_number(with_nodes({0, 12}), r) == 2);
    CHECK(point_in_region({{0, 0, 0}}, r) == Containment::Outside);
}

TEST_CASE("frame violations") {
    const Region3 far = shapes::ball("R", {{10, 0, 0}}, 1.0);
    const Region3 regions[] = {far};
    CHECK(validate_frame(with_nodes({0, 6}), regions).ok());
    CHECK(validate_frame(with_nodes({0, 6, 9}), regions).has(ViolationKind::OddNodeCount));

    FramedHyperlink mixed = with_nodes({0, 6});
    mixed.nodes[1].sign = -1;
    CHECK(validate_frame(mixed, regions).has(ViolationKind::MixedSigns));

    FramedHyperlink bad = with_nodes({0, 6});
    bad.nodes[1].edge = 99;
    CHECK(validate_frame(bad, regions).has(ViolationKind::NodeInvalid));
}

TEST_CASE("node on the region boundary") {
    FramedHyperlink f = with_nodes({0, 12});
    // move a ball so that one of its vertices sits on node 0
    Region3 r = shapes::ball("R", {{0, 0, 0}}, 0.5);
    const Point3 shift = node_position(f.nodes[0], f.hyperlink) - r.vertices[5];
    for (auto& v : r.vertices) v += shift;
    const Region3 regions[] = {r};
    CHECK(validate_frame(f, regions, 1e-6).has(ViolationKind::OnBoundary));
    CHECK_THROWS_AS(confinement_number(f, r, 1e-6), Error);
}

TEST_CASE("loop crossing the region's time slice is region contact") {
    Hyperlink h{{shapes::circle("m", {{0, 0, 0}}, shapes::e1, shapes::e2, 1.0,
                                [](const Point3& x) { return x[0]; })}};
    const FramedHyperlink f{h, {{"m", 3, 0.5, 1}, {"m", 9, 0.5, 1}}};
    const Region3 at_zero = shapes::ball("R", {{0, 1, 0}}, 0.3);
    const Region3 regions[] = {at_zero};
    CHECK(validate_frame(f, regions).has(ViolationKind::RegionContact));
}
