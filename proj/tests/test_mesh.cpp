#include <doctest.h>

#include "qgi/errors.hpp"
#include "qgi/mesh.hpp"
#include "support/shapes.hpp"

using namespace qgi;

TEST_CASE("uv sphere is a closed valid surface") {
    const Surface4 s = shapes::sphere("S", {{0, 0, 0}}, 1.0, shapes::constant_time(0));
    CHECK(is_closed(s));
    CHECK(boundary_edges(s.triangles).empty());
    CHECK(validate_surface(s, kDefaultTolerance).ok());
    CHECK(triangle_components(s.triangles).size() == 1);
}

TEST_CASE("disk has one boundary loop with the expected orientation") {
    const Surface4 d = shapes::disk("D", {{0, 0, 0}}, shapes::e1, shapes::e2, 1.0, shapes::constant_time(2));
    CHECK_FALSE(is_closed(d));
    CHECK(validate_surface(d, kDefaultTolerance).ok());
    const auto loops = boundary_loops(d);
    REQUIRE(loops.size() == 1);
    CHECK(loops[0].id == "D/boundary0");
    CHECK(loops[0].size() == 16);
    // counter-clockwise seen from +x3: positive signed area
    double area = 0;
    for (std::size_t i = 0; i < loops[0].size(); ++i) {
        const Point4 p = loops[0].vertex(i), q = loops[0].vertex(i + 1);
        area += p[1] * q[2] - p[2] * q[1];
    }
    CHECK(area > 0);
}

TEST_CASE("mesh defects are reported") {
    Surface4 s = shapes::sphere("S", {{0, 0, 0}}, 1.0, shapes::constant_time(0));
    SUBCASE("flipped triangle") {
        std::swap(s.triangles[3][0], s.triangles[3][1]);
        CHECK(validate_surface(s, kDefaultTolerance).has(ViolationKind::SurfaceInvalid));
    }
    SUBCASE("degenerate triangle") {
        s.triangles[0][2] = s.triangles[0][1];
        CHECK_FALSE(validate_surface(s, kDefaultTolerance).ok());
    }
    SUBCASE("region must be closed") {
        Region3 r = shapes::ball("R", {{0, 0, 0}}, 1.0);
        r.triangles.pop_back();
        CHECK(validate_region(r, kDefaultTolerance).has(ViolationKind::RegionInvalid));
    }
}

TEST_CASE("two spheres make two components") {
    Surface4 a = shapes::sphere("S", {{0, 0, 0}}, 1.0, shapes::constant_time(0));
    const Surface4 b = shapes::sphere("T", {{4, 0, 0}}, 1.0, shapes::constant_time(0));
    const std::size_t off = a.vertices.size();
    a.vertices.insert(a.vertices.end(), b.vertices.begin(), b.vertices.end());
    for (auto t : b.triangles) a.triangles.push_back({t[0] + off, t[1] + off, t[2] + off});
    CHECK(triangle_components(a.triangles).size() == 2);
    CHECK(validate_surface(a, kDefaultTolerance).ok());
}

TEST_CASE("point in mesh agrees with the distance to the centre") {
    const Region3 r = shapes::ball("R", {{0.2, -0.1, 0.3}}, 1.0, 12, 18);
    Rng rng(17);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const Point3 p{{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)}};
        const double d = distance(p, Point3{{0.2, -0.1, 0.3}});
        // the polyhedron sits between radius cos(pi/12)^2 and 1
        if (d > 0.9 && d < 1.05) continue;
        ++checked;
        const Containment c = point_in_mesh(p, r.vertices, r.triangles, kDefaultTolerance);
        CHECK(c == (d < 0.9 ? Containment::Inside : Containment::Outside));
    }
    CHECK(checked > 200);
    CHECK(point_in_mesh(r.vertices[5], r.vertices, r.triangles, 1e-9) == Containment::OnBoundary);
}
