#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include "setvar/arrangement.hpp"
#include "setvar/dd.hpp"

using namespace setvar;
using namespace testing;

TEST_CASE("rationals parse and print canonically") {
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(parse_rat("-0.25") == Rat(-1, 4));
    CHECK(parse_rat("1e-3") == Rat(1, 1000));
    CHECK(to_string(parse_rat("-10/4")) == "-5/2");
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("x"), ParseError);
    CHECK(to_decimal(Rat(1, 3), 5) == "0.33333");
}

TEST_CASE("polyhedron membership") {
    Polyhedron half(1, {{{1}, 1}});
    CHECK(half.contains({1}));
    CHECK_FALSE(half.contains({Rat(3, 2)}));
    Polyhedron tri(2, {{{1, 1}, 1}, {{-1, 0}, 0}, {{0, -1}, 0}});
    CHECK(tri.contains({Rat(1, 2), Rat(1, 2)}));
    CHECK_THROWS_AS(tri.contains({1}), DimensionError);
}

TEST_CASE("projection examples") {
    Polyhedron square = Polyhedron::box({0, 0}, {1, 1});
    CHECK(square.project({0}) == Polyhedron::box({0}, {1}));

    Document d = doc("tightness.vi");
    CHECK(d.map_named("G2").graph.project({0}) == PolyUnion(Polyhedron::universe(1)));

    // z = x + y on the unit square, onto (x, z)
    Polyhedron p(3, {{{-1, 0, 0}, 0}, {{1, 0, 0}, 1}, {{0, -1, 0}, 0}, {{0, 1, 0}, 1}}, {{{1, 1, -1}, 0}});
    Polyhedron expect(2, {{{-1, 0}, 0}, {{1, 0}, 1}, {{1, -1}, 0}, {{-1, 1}, 1}});
    CHECK(p.project({0, 2}) == expect);
    CHECK(p.project_generators({0, 2}) == expect);
}

TEST_CASE("cone hull and inclusion examples") {
    VCone two_lines(2, {Polyhedron::cone(2, {}, {{1, 1}}), Polyhedron::cone(2, {}, {{1, -1}})});
    CHECK(cone_hull(two_lines).as_union() == PolyUnion(Polyhedron::universe(2)));

    VCone two_rays(2, {Polyhedron::cone(2, {{1, 1}}), Polyhedron::cone(2, {{1, -1}})});
    Polyhedron wedge(2, {{{-1, 1}, 0}, {{-1, -1}, 0}});
    CHECK(cone_hull(two_rays).as_union() == PolyUnion(wedge));

    VCone ray(2, {Polyhedron::cone(2, {{1, 1}})});
    CHECK(cone_equal(cone_hull(ray), ray));
    CHECK(cone_includes(ray, VCone(2, {wedge})));
    CHECK_FALSE(cone_includes(VCone(2, {Polyhedron::universe(2)}), VCone(2, {Polyhedron::cone(2, {{1, 0}})})));
    CHECK(cone_includes(VCone(2, {wedge}), VCone(2, {Polyhedron(2, {{{-1, 0}, 0}})})));
}

TEST_CASE("hausdorff examples") {
    HausdorffResult a = hausdorff(PolyUnion(interval(0, 1)), PolyUnion(interval(0, 2)));
    CHECK(a.exact);
    CHECK(*a.rational == 1);
    PolyUnion pts(1, {Polyhedron::point({-1}), Polyhedron::point({1})});
    CHECK(*hausdorff(pts, PolyUnion(interval(-1, 1))).rational == 1);
    Rat e = Rat(2718281828459, 1000000000000);
    HausdorffResult c = hausdorff(PolyUnion(interval(1, Rat(9, 4))), PolyUnion(interval(1, e)));
    CHECK(*c.rational == e - Rat(9, 4));
    CHECK(c.value == doctest::Approx(0.46828).epsilon(1e-5));
    CHECK_THROWS_WITH(hausdorff(PolyUnion(Polyhedron(1, {{{1}, 0}})), pts), "unbounded set");
}

TEST_CASE("hausdorff in the plane is exact for convex sets") {
    HausdorffResult r = hausdorff(PolyUnion(Polyhedron::box({0, 0}, {1, 1})), PolyUnion(Polyhedron::box({0, 0}, {2, 1})));
    CHECK(r.exact);
    CHECK(*r.squared == 1);
}

TEST_CASE("union slice examples") {
    Document d = doc("tightness.vi");
    PolyUnion g3 = union_slice(d.map_named("G3").graph, {0}, {1});
    CHECK(g3 == PolyUnion(Polyhedron(1, {{{-1}, -1}})));
    PolyUnion f = union_slice(d.map_named("F").graph, {0}, {2});
    CHECK(f == PolyUnion(1, {Polyhedron::point({-2}), Polyhedron::point({2})}));
    Polyhedron strip(2, {{{1, 0}, 1}, {{-1, 0}, 0}});
    CHECK(union_slice(PolyUnion(strip), {0}, {5}).is_empty());
}

TEST_CASE("double description round trip on random cones") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 2 + trial % 3;
        Polyhedron k = random_cone(rng, d, 2 + trial % 4);
        ConeGenerators facets = cone_facets(d, k.rays(), k.lines());
        ConeGenerators back = cone_generators(d, facets.rays, facets.lines);
        Polyhedron again = Polyhedron::cone(d, back.rays, back.lines);
        CHECK(again.includes(k));
        CHECK(k.includes(again));
        Polyhedron from_h(d, k.inequalities(), k.equalities());
        CHECK(from_h == k);
    }
}

TEST_CASE("polar involution on random cones") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        Polyhedron k = random_cone(rng, 2 + trial % 3, 1 + trial % 4);
        CHECK(k.polar().polar() == k);
    }
}

TEST_CASE("projection is monotone and agrees with the generator route") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        Polyhedron q = random_polytope(rng, 3, 5);
        Polyhedron p = q.intersect(Polyhedron::box(rvec(rng, 3, -8, 0), rvec(rng, 3, 0, 8)));
        std::vector<int> keep = trial % 2 ? std::vector<int>{0, 2} : std::vector<int>{1};
        CHECK(q.project(keep).includes(p.project(keep)));
        CHECK(q.project(keep) == q.project_generators(keep));
    }
}

TEST_CASE("hausdorff is a metric on interval unions") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        PolyUnion a = random_intervals(rng, 1 + trial % 3);
        PolyUnion b = random_intervals(rng, 1 + trial % 2);
        PolyUnion c = random_intervals(rng, 2);
        Rat ab = *hausdorff(a, b).rational, ba = *hausdorff(b, a).rational;
        CHECK(ab == ba);
        CHECK(*hausdorff(a, a).rational == 0);
        CHECK((ab == 0) == a.set_equal(b));
        CHECK(ab <= *hausdorff(a, c).rational + *hausdorff(c, b).rational);
    }
}

TEST_CASE("canonical serialization ignores piece order") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Polyhedron> pieces;
        for (int i = 0; i < 4; ++i) pieces.push_back(random_polytope(rng, 2, 3));
        PolyUnion a(2, pieces);
        std::shuffle(pieces.begin(), pieces.end(), rng);
        PolyUnion b(2, pieces);
        CHECK(a.serialize() == b.serialize());
    }
}

TEST_CASE("union containment by subdivision") {
    PolyUnion halves(1, {Polyhedron(1, {{{1}, 0}}), Polyhedron(1, {{{-1}, 0}})});
    CHECK(halves.covers(Polyhedron::universe(1)));
    PolyUnion gap(1, {interval(0, 1), interval(2, 3)});
    CHECK_FALSE(gap.covers(interval(0, 3)));
    CHECK(gap.covers(interval(2, Rat(5, 2))));
    PolyUnion quadrants(2, {Polyhedron(2, {{{-1, 0}, 0}}), Polyhedron(2, {{{1, 0}, 0}, {{0, -1}, 0}}),
                            Polyhedron(2, {{{1, 0}, 0}, {{0, 1}, 0}})});
    CHECK(quadrants.covers(Polyhedron::universe(2)));
}

TEST_CASE("hull of a union of intervals") {
    PolyUnion u(1, {interval(-2, -1), interval(1, 3)});
    CHECK(u.hull() == interval(-2, 3));
    CHECK(PolyUnion(1).hull().is_empty());
}

TEST_CASE("nearest point and distance") {
    Polyhedron sq = Polyhedron::box({0, 0}, {1, 1});
    CHECK(sq.nearest_point({2, Rat(1, 2)}) == Vec{1, Rat(1, 2)});
    CHECK(sq.distance2({2, 2}) == 2);
    PolyUnion u(1, {interval(0, 1), interval(3, 4)});
    CHECK(u.nearest_point({Rat(5, 2)}) == Vec{3});
}

TEST_CASE("strata of an arrangement in an interval") {
    // [-1, 1] cut at 0: three faces
    std::vector<Vec> pts = strata_points(interval(-1, 1), {{{1}, 0}});
    CHECK(pts.size() == 3);
    CHECK(central_face_points(2, {{1, 0}, {0, 1}}).size() == 9);
}

TEST_CASE("empty pieces are dropped and emptiness is stable") {
    Polyhedron e(1, {{{1}, 0}, {{-1}, -1}});
    CHECK(e.is_empty());
    CHECK(e.is_empty());
    CHECK(PolyUnion(1, {e}).is_empty());
}
