#include <doctest.h>

#include <cmath>

#include "qgi/scene.hpp"
#include "support/oracles.hpp"
#include "support/scenes.hpp"

using namespace qgi;

TEST_CASE("hopf scene reports sk only") {
    const Scene s = scenes::hopf(3);
    const InvariantReport r = compute_invariants(s);
    CHECK(r.validation.ok());
    REQUIRE(r.sk);
    int oracle = 0;
    for (int k = 1; k <= 3; ++k) oracle += oracles::tally(s.matter.loops[0], s.geometric.loops[0], k).lagged_sum;
    CHECK(*r.sk == oracle);
    CHECK(*r.sk_invariant);
    CHECK(r.lk_surface.empty());
    CHECK(r.nu_S.empty());
    CHECK(r.nu_R.empty());
}

TEST_CASE("empty scene is valid and has no invariants") {
    const InvariantReport r = compute_invariants(Scene{});
    CHECK(r.validation.ok());
    CHECK_FALSE(r.sk);
}

TEST_CASE("surface and region invariants come from the right hyperlink") {
    using scenes::Chord;
    Scene s = scenes::coil_sphere(5, {Chord::Spanning, Chord::Removable, Chord::Spanning});
    const Scene framed = scenes::framed(2);
    // matter: the framed ring far away in time and space; geometric: the coil
    Loop m = framed.matter.loops[0];
    for (auto& v : m.vertices) v = {{v[0] + 5, v[1] + 20, v[2], v[3]}};
    Region3 g = framed.regions[0];
    for (auto& v : g.vertices) v[0] += 20;
    s.matter.loops.push_back(m);
    s.nodes = framed.nodes;
    s.regions.push_back(g);
    const InvariantReport r = compute_invariants(s);
    CHECK(r.validation.ok());
    CHECK(r.lk_surface.at("S").at("A0") == r.lk_surface.at("S").at("A3"));
    CHECK(r.lk_surface.at("S").at("A0") != 0);
    CHECK(r.nu_S.at("S").value == 0);
    CHECK(r.nu_R.at("R") == 1);
}

TEST_CASE("blocking violations leave invariants empty") {
    Scene s = scenes::hopf(3);
    s.geometric.loops[0].id = "m";
    const InvariantReport r = compute_invariants(s);
    CHECK(r.validation.has(ViolationKind::Structure));
    CHECK_FALSE(r.sk);
}

TEST_CASE("incomparable pairs still get sk, tagged as not invariant") {
    Scene s = scenes::hopf(3, 0.0, 0.0);
    auto& a = s.matter.loops[0].vertices;
    auto& b = s.geometric.loops[0].vertices;
    for (std::size_t i = 0; i < a.size(); ++i) a[i][0] = 0.5 * std::sin(2 * shapes::kPi * i / a.size());
    for (std::size_t i = 0; i < b.size(); ++i) b[i][0] = 0.2 + 0.5 * std::cos(2 * shapes::kPi * i / b.size());
    const InvariantReport r = compute_invariants(s);
    CHECK(r.validation.has(ViolationKind::Incomparable));
    REQUIRE(r.sk);
    CHECK_FALSE(*r.sk_invariant);
}

TEST_CASE("axis-aligned hopf is degenerate until pregeneric") {
    const Scene s = scenes::hopf_axis_aligned();
    const ValidationReport v = validate_scene(s);
    CHECK(v.only_degeneracies());
    const InvariantReport r = compute_invariants(pregeneric(s, 1));
    CHECK(r.validation.ok());
    REQUIRE(r.sk);
    CHECK(std::abs(*r.sk) == 6);
    CHECK(pregeneric(s, 1).matter.loops[0].vertices == pregeneric(s, 1).matter.loops[0].vertices);
}

TEST_CASE("loop through a surface in R x R^3 is surface contact") {
    Scene s;
    s.surfaces.push_back(shapes::disk("D", {{0, 0, 0}}, shapes::e1, shapes::e2, 1.0, shapes::constant_time(0)));
    s.geometric.loops.push_back(
        shapes::circle("g", {{0.93, 0.11, 0}}, shapes::e1, shapes::e3, 1.0, shapes::constant_time(0), 24, 0.1));
    CHECK(check_scene(s).has(ViolationKind::SurfaceContact));
}
