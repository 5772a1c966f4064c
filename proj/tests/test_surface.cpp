#include <doctest.h>

#include <cstdlib>

#include "qgi/errors.hpp"
#include "qgi/hyperlink_invariants.hpp"
#include "qgi/surface_invariants.hpp"
#include "support/oracles.hpp"
#include "support/shapes.hpp"

using namespace qgi;
using shapes::Chord;

namespace {

struct CoilCase {
    Loop loop;
    Surface4 sphere;
};

CoilCase coil_case(std::uint64_t seed, const std::vector<Chord>& chords) {
    Rng rng(seed);
    const Point3 tilt{{rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)}};
    const auto m = shapes::random_motion(rng, 0.5);
    return {shapes::moved(shapes::coil("l", chords), m),
            shapes::moved(shapes::sphere("S", {{0, 0, 0}}, 1.0, [&](const Point3& x) { return 0.1 + dot(tilt, x); }), m)};
}

int spanning(const std::vector<Chord>& chords) {
    int s = 0;
    for (Chord c : chords) s += c == Chord::Spanning;
    return s;
}

Loop subdivided(const Loop& l) {
    Loop out{l.id, {}};
    for (std::size_t i = 0; i < l.size(); ++i) {
        out.vertices.push_back(l.vertex(i));
        out.vertices.push_back(l.point_at(i, 0.37));
    }
    return out;
}

}  // namespace

TEST_CASE("every chord pierces the sphere twice") {
    const std::vector<Chord> chords{Chord::Spanning, Chord::Removable, Chord::Spanning, Chord::Removable};
    const auto c = coil_case(3, chords);
    const auto p = piercings(c.loop, c.sphere, ProjectionAxis::A0);
    CHECK(p.size() == 2 * chords.size());
    for (const auto& x : p) CHECK(x.eps == x.sgn * x.ht);
}

TEST_CASE("closed surface lk does not depend on the axis") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const auto c = coil_case(seed, {Chord::Spanning, Chord::Removable, Chord::Spanning});
        const int lk0 = lk_loop_surface(c.loop, c.sphere, ProjectionAxis::A0);
        CHECK(lk0 != 0);
        for (ProjectionAxis a : kAllAxes) CHECK(lk_loop_surface(c.loop, c.sphere, a) == lk0);
    }
}

TEST_CASE("loop far from the surface has lk 0 and nu 0") {
    Surface4 s = shapes::sphere("S", {{0, 0, 0}}, 1.0, shapes::constant_time(0));
    Loop l = shapes::circle("l", {{5, 0, 0}}, shapes::e1, shapes::e2, 1, shapes::constant_time(3));
    for (ProjectionAxis a : kAllAxes) CHECK(lk_loop_surface(l, s, a) == 0);
    CHECK(piercing_number(std::span<const Loop>(&l, 1), s).value == 0);
}

TEST_CASE("disk lk is minus one sixth of sk with its boundary") {
    Rng rng(11);
    for (int it = 0; it < 8; ++it) {
        Surface4 d = shapes::disk("D", {{0, 0, 0}}, shapes::e1, shapes::e2, 1.0, shapes::constant_time(1.0));
        Loop l = shapes::circle("l", {{0.93, 0.11, 0}}, shapes::e1, shapes::e3, 1.0, shapes::constant_time(-1.0), 24, 0.1);
        if (it % 2) l = shapes::retimed(l, 4.0);
        if (it % 3 == 0) l = shapes::reversed(l);
        const auto m = shapes::random_motion(rng);
        d = shapes::moved(d, m);
        l = shapes::moved(l, m);
        const Loop boundary = boundary_loops(d).at(0);
        int sk = 0;
        for (int k = 1; k <= 3; ++k) sk += oracles::tally(l, boundary, k).lagged_sum;
        CHECK(std::abs(sk) == 6);
        CHECK(lk_loop_surface(l, d, ProjectionAxis::A0) * 6 == -sk);
        CHECK(lk_loop_surface(l, d, ProjectionAxis::A1) == 0);
        CHECK(lk_loop_surface(l, d, ProjectionAxis::A2) == 0);
        CHECK(lk_loop_surface(l, d, ProjectionAxis::A3) == 0);
    }
}

TEST_CASE("piercing sequence alternates and classifies arcs") {
    const auto c = coil_case(4, {Chord::Spanning, Chord::Removable});
    const PiercingSequence seq = build_piercing_sequence(c.loop, c.sphere);
    REQUIRE(seq.size() == 4);
    int interior = 0;
    for (std::size_t i = 0; i < seq.arcs.size(); ++i) {
        interior += seq.arcs[i].side == ArcSide::Interior;
        CHECK(seq.arcs[i].side != seq.arcs[(i + 1) % seq.arcs.size()].side);
    }
    CHECK(interior == 2);
}

TEST_CASE("movement W leaves two piercings per spanning arc") {
    const std::vector<std::vector<Chord>> cases{
        {Chord::Spanning},
        {Chord::Removable},
        {Chord::Spanning, Chord::Removable},
        {Chord::Spanning, Chord::Spanning, Chord::Removable},
        {Chord::Removable, Chord::Removable, Chord::Spanning, Chord::Removable},
        {Chord::Spanning, Chord::Removable, Chord::Spanning, Chord::Removable, Chord::Removable},
    };
    std::uint64_t seed = 20;
    for (const auto& chords : cases) {
        const auto c = coil_case(++seed, chords);
        const TauExtent ext = tau_extent(c.sphere);
        const auto seq = build_piercing_sequence(c.loop, c.sphere);
        const Reduction r = reduce_movement_w(seq, ext);
        CHECK(r.reduced.size() == static_cast<std::size_t>(2 * spanning(chords)));
        CHECK(r.withdrawn.size() == chords.size() - spanning(chords));
        int eps = 0;
        for (const auto& p : seq.piercings) eps += p.eps;
        CHECK(static_cast<int>(r.reduced.size()) >= std::abs(eps));

        const Loop finer = subdivided(c.loop);
        CHECK(reduce_movement_w(build_piercing_sequence(finer, c.sphere), ext).reduced.size() == r.reduced.size());
        CHECK(piercing_number(std::span<const Loop>(&finer, 1), c.sphere).value == 2 * spanning(chords));
    }
}

TEST_CASE("removable needs the arc to miss one end of the surface's time range") {
    const TauExtent surf{-1, 1};
    CHECK(removable({ArcSide::Interior, {-0.5, 2}}, surf));
    CHECK(removable({ArcSide::Interior, {-3, 0.5}}, surf));
    CHECK_FALSE(removable({ArcSide::Interior, {-2, 2}}, surf));
}

TEST_CASE("boundary surface piercing number is a lower bound") {
    Surface4 d = shapes::disk("D", {{0, 0, 0}}, shapes::e1, shapes::e2, 1.0, shapes::constant_time(1.0));
    const Loop l = shapes::circle("l", {{0.93, 0.11, 0}}, shapes::e1, shapes::e3, 1.0, shapes::constant_time(-1.0), 24, 0.1);
    const PiercingNumber nu = piercing_number(std::span<const Loop>(&l, 1), d);
    CHECK(nu.exactness == Exactness::LowerBound);
    REQUIRE(nu.lower_bound);
    CHECK(*nu.lower_bound == 1);
    CHECK(nu.value >= *nu.lower_bound);
}

TEST_CASE("grazing the surface edge is a degeneracy") {
    Surface4 d = shapes::disk("D", {{0, 0, 0}}, shapes::e1, shapes::e2, 1.0, shapes::constant_time(1.0));
    // passes straight through the centre vertex
    const Loop l = shapes::circle("l", {{1, 0, 0}}, shapes::e1, shapes::e3, 1.0, shapes::constant_time(-1.0), 24);
    try {
        lk_loop_surface(l, d, ProjectionAxis::A0);
        FAIL("expected a degeneracy");
    } catch (const Error& e) {
        CHECK(e.is_degeneracy());
    }
}
