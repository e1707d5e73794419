#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "setvar/limits.hpp"

using namespace setvar;
using namespace testing;

namespace {

SetMap box_map() { return SetMap(1, 1, PolyUnion(Polyhedron(2, {{{0, 1}, 1}, {{0, -1}, 1}}))); }

Rat growth_power(int N) {
    Rat base = 1 + Rat(1) / N, out = 1;
    for (int k = 0; k < N; ++k) out *= base;
    return out;
}

}  // namespace

TEST_CASE("interpolation examples") {
    InterpolatedPath p = interpolate({{0}, {Rat(1, 2)}, {1}}, 1);
    CHECK(p.value(Rat(1, 4)) == Vec{Rat(1, 4)});
    CHECK(p.derivative(Rat(1, 4)) == Vec{1});
    InterpolatedPath c = interpolate({{3}, {3}, {3}, {3}}, 2);
    for (const Rat& t : {Rat(0), Rat(1, 3), Rat(2)}) CHECK(c.value(t) == Vec{3});
    CHECK(c.derivative(Rat(1, 5)) == Vec{0});
    InterpolatedPath v = interpolate({{0}, {Rat(1, 2)}, {0}}, 1);
    CHECK(v.derivative(Rat(3, 4)) == Vec{-1});
    CHECK(v.value(Rat(3, 4)) == Vec{Rat(1, 4)});
    CHECK_THROWS_WITH(v.value(Rat(5, 4)), "time outside [0, T]");
    CHECK_THROWS_WITH(v.value(Rat(-1, 8)), "time outside [0, T]");
    CHECK_THROWS_WITH(v.derivative(Rat(1, 2)), "derivative is undefined at a breakpoint");
}

TEST_CASE("interpolation hits the states and follows the dynamics") {
    Document d = doc("certify.vi");
    for (int N : {2, 4, 8}) {
        DiscreteInclusion di = inclusion_from(d, N);
        for (const Rat& xN : {Rat(-1), Rat(0), Rat(1, 2)}) {
            PathSet ps = enumerate_paths(di, {0}, {xN}, PathMode::sampled, 8, 5);
            for (const Path& path : ps.paths) {
                InterpolatedPath ip = interpolate(path, di.T);
                CHECK(ip.value(0) == path.front());
                CHECK(ip.value(di.T) == path.back());
                for (int j = 0; j < N; ++j) {
                    CHECK(ip.value(di.dt * j) == path[static_cast<std::size_t>(j)]);
                    Rat mid = di.dt * j + di.dt / 2;
                    CHECK(eval(di.F(j), path[static_cast<std::size_t>(j)]).contains(ip.derivative(mid)));
                }
            }
        }
    }
    Document g = doc("growth.vi");
    DiscreteInclusion gi = inclusion_from(g, 5);
    for (const Path& path : enumerate_paths(gi, {1}, {2}, PathMode::vertex, 16).paths) {
        InterpolatedPath ip = interpolate(path, gi.T);
        for (int j = 0; j < 5; ++j)
            CHECK(eval(gi.F(j), path[static_cast<std::size_t>(j)]).contains(ip.derivative(gi.dt * j + gi.dt / 3)));
    }
}

TEST_CASE("convergence table for the growth dynamics") {
    Document g = doc("growth.vi");
    REQUIRE(g.reference.has_value());
    Rat e = Rat(2718281828459, 1000000000000);
    ConvergenceTable t = hausdorff_convergence(inclusion_from(g), {10, 100}, {1}, g.reference);
    REQUIRE(t.rows.size() == 2);
    CHECK_FALSE(t.proxy);
    CHECK(*t.rows[0].distance.rational == e - growth_power(10));
    CHECK(*t.rows[1].distance.rational == e - growth_power(100));
    CHECK(t.rows[0].distance.value == doctest::Approx(0.124539).epsilon(1e-5));
    CHECK(t.rows[1].distance.value == doctest::Approx(0.013468).epsilon(1e-4));
    CHECK(t.strictly_decreasing);

    ConvergenceTable single = hausdorff_convergence(inclusion_from(g), {7}, {1}, g.reference);
    CHECK(single.rows.size() == 1);
    ConvergenceTable proxy = hausdorff_convergence(inclusion_from(g), {4, 8}, {1}, std::nullopt);
    CHECK(proxy.proxy);
    CHECK(*proxy.rows.back().distance.rational == 0);
}

TEST_CASE("convergence is exact for interval dynamics") {
    DiscreteInclusion b = DiscreteInclusion::make(1, 1, 1, {box_map()});
    ConvergenceTable t = hausdorff_convergence(b, {1, 3, 9}, {0}, PolyUnion(interval(-1, 1)));
    for (const ConvergenceRow& r : t.rows) CHECK(*r.distance.rational == 0);
    CHECK_FALSE(t.strictly_decreasing);
    SetMap unbounded(1, 1, PolyUnion(Polyhedron(2, {{{0, -1}, 0}})));
    CHECK_THROWS_WITH(hausdorff_convergence(DiscreteInclusion::make(1, 1, 1, {unbounded}), {2}, {0},
                                            PolyUnion(interval(0, 1))),
                      "unbounded set");
}

TEST_CASE("distances shrink along doubling step counts") {
    Document g = doc("growth.vi");
    ConvergenceTable t = hausdorff_convergence(inclusion_from(g), {10, 20, 40, 80, 160}, {1}, g.reference);
    CHECK(t.strictly_decreasing);
    for (std::size_t i = 0; i + 1 < t.rows.size(); ++i) CHECK(*t.rows[i + 1].distance.rational < *t.rows[i].distance.rational);
}

TEST_CASE("adjoint set stability") {
    DiscreteInclusion b = DiscreteInclusion::make(1, 1, 2, {box_map()});
    PiStability s = pi_stability(b, {0}, {-1}, {1}, {2, 4}, {Rat(1, 10), Rat(1, 100)});
    CHECK(s.cells.size() == 4);
    for (const PiCell& c : s.cells) CHECK(c.hull == Polyhedron::point({1}));
    CHECK(s.intersection == Polyhedron::point({1}));
    CHECK(s.matches);

    PiStability neg = pi_stability(b, {0}, {-1}, {-1}, {2, 4}, {Rat(1, 10)});
    for (const PiCell& c : neg.cells) CHECK(c.hull.is_empty());
    CHECK(neg.intersection.is_empty());

    DiscreteInclusion lin = DiscreteInclusion::make(1, 1, 2, {affine_map({{-1}}, {0})});
    PiStability a = pi_stability(lin, {4}, {1}, {3}, {2}, {Rat(1, 8)});
    for (const PiCell& c : a.cells) CHECK(c.hull == Polyhedron::point({Rat(3, 4)}));
    CHECK(a.matches);
}

TEST_CASE("nested hull examples") {
    std::vector<PolyUnion> seq;
    for (int i = 1; i <= 5; ++i) {
        Rat w = Rat(1) / i;
        seq.push_back(PolyUnion(1, {interval(-1 - w, -1), interval(1, 1 + w)}));
    }
    NestedHullReport r = nested_hull_check(seq, true);
    CHECK(r.nested);
    CHECK(r.equal);
    CHECK(r.hull_of_intersection == interval(Rat(-6, 5), Rat(6, 5)));
    CHECK(r.intersection_of_hulls == interval(Rat(-6, 5), Rat(6, 5)));

    PolyUnion tri(Polyhedron::from_generators(2, {{0, 0}, {1, 0}, {0, 1}}));
    CHECK(nested_hull_check({tri, tri, tri}, true).equal);

    std::vector<PolyUnion> bad = {PolyUnion(interval(0, 1)), PolyUnion(interval(0, 2))};
    CHECK_THROWS_WITH(nested_hull_check(bad, true), "sequence is not nested");
    CHECK_FALSE(nested_hull_check(bad, false).nested);
    CHECK_THROWS_WITH(nested_hull_check({PolyUnion(Polyhedron(1, {{{1}, 0}}))}, false), "unbounded set");
}

TEST_CASE("hull commutes with nested intersections") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 100; ++trial) {
        // shrink a random union by intersecting with shrinking windows and
        // dropping pieces, which keeps the family nested
        std::vector<PolyUnion> seq = {random_intervals(rng, 2 + trial % 4)};
        for (int i = 1; i < 2 + trial % 5; ++i) {
            PolyUnion cur = seq.back();
            Polyhedron h = cur.hull();
            Rat lo = h.vertices().front()[0], hi = h.vertices().back()[0];
            if (lo > hi) std::swap(lo, hi);
            Rat len = hi - lo;
            Polyhedron window = interval(lo + len * rq(rng, 0, 2, 8), hi - len * rq(rng, 0, 2, 8));
            PolyUnion next = cur.intersect(window);
            if (next.is_empty()) break;
            seq.push_back(next);
        }
        NestedHullReport r = nested_hull_check(seq, true);
        CHECK(r.nested);
        CHECK(r.equal);
    }
}
