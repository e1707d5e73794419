#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>

using namespace setvar;
using namespace testing;

namespace {

PolyUnion points(std::initializer_list<Rat> xs) {
    std::vector<Polyhedron> ps;
    for (const Rat& x : xs) ps.push_back(Polyhedron::point({x}));
    return PolyUnion(1, ps);
}

// G(x) = [x - 1, x + 1]
SetMap band() { return SetMap(1, 1, PolyUnion(Polyhedron(2, {{{-1, 1}, 1}, {{1, -1}, 1}}))); }

MinMaxAffine value_of_y() { return MinMaxAffine{2, {{AffineRow{{0, 1}, 0}}}}; }

// min over y in [lo(x), hi(x)] of max_i (a_i x + b_i y + c_i): the minimum of a
// convex piecewise-linear function of y sits at an endpoint or a crossing.
Rat brute_min(const std::vector<AffineRow>& rows, const AffineRow& lo, const AffineRow& hi, const Rat& x) {
    Rat a = lo.coeffs[0] * x + lo.constant, b = hi.coeffs[0] * x + hi.constant;
    auto at = [&](const Rat& y) {
        Rat m = rows[0].coeffs[0] * x + rows[0].coeffs[1] * y + rows[0].constant;
        for (const AffineRow& r : rows) m = std::max(m, Rat(r.coeffs[0] * x + r.coeffs[1] * y + r.constant));
        return m;
    };
    std::vector<Rat> cand = {a, b};
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            Rat db = rows[i].coeffs[1] - rows[j].coeffs[1];
            if (db == 0) continue;
            Rat y = -((rows[i].coeffs[0] - rows[j].coeffs[0]) * x + rows[i].constant - rows[j].constant) / db;
            if (a <= y && y <= b) cand.push_back(y);
        }
    Rat best = at(cand[0]);
    for (const Rat& y : cand) best = std::min(best, at(y));
    return best;
}

}  // namespace

TEST_CASE("relation symbols") {
    CHECK(symbol(Relation::equal) == "=");
    CHECK(symbol(Relation::strict_subset) == "⊊");
    CHECK(symbol(Relation::strict_superset) == "⊋");
    CHECK(symbol(Relation::incomparable) == "≠");
    CHECK(compare(PolyUnion(interval(0, 1)), PolyUnion(interval(0, 2))) == Relation::strict_subset);
    CHECK(compare(PolyUnion(interval(0, 2)), PolyUnion(interval(0, 1))) == Relation::strict_superset);
    CHECK(compare(PolyUnion(interval(0, 2)), PolyUnion(interval(1, 3))) == Relation::incomparable);
}

TEST_CASE("qualification condition examples") {
    Document d = doc("tightness.vi");
    CqResult ok = check_cq(d.map_named("F"), d.map_named("G2"), {0}, {0}, {0});
    CHECK(ok.ok);
    CHECK_FALSE(ok.witness.has_value());

    SetMap zero = constant_map(1, PolyUnion(Polyhedron::point({0})));
    SetMap vertical(1, 1, PolyUnion(Polyhedron(2, {}, {{{1, 0}, 0}})));
    CqResult bad = check_cq(vertical, zero, {0}, {5}, {3});
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.witness.has_value());
    CHECK_FALSE(is_zero(*bad.witness));

    CHECK(check_cq(affine_map({{2}}, {1}), affine_map({{-1}}, {0}), {-1}, {-1}, {1}).ok);
    CHECK_THROWS(check_cq(d.map_named("F"), d.map_named("G2"), {1}, {0}, {0}));
}

TEST_CASE("intermediate set of the tightness example") {
    Document d = doc("tightness.vi");
    CHECK(intermediate_set(d.map_named("F"), d.map_named("G2"), {0}, {0}) == points({0}));
    CHECK(intermediate_set(d.map_named("F"), d.map_named("G1"), {1}, {1}) == points({-1, 1}));
    CHECK(intermediate_points(d.map_named("F"), d.map_named("G1"), {1}, {1}).size() == 2);
}

TEST_CASE("tightness pattern of the convexified chain rule") {
    Document d = doc("tightness.vi");
    const SetMap& f = d.map_named("F");
    struct Row {
        const char* g;
        Relation first, second;
    };
    for (Row r : {Row{"G1", Relation::equal, Relation::strict_subset},
                  Row{"G2", Relation::strict_subset, Relation::equal},
                  Row{"G3", Relation::strict_subset, Relation::strict_subset}}) {
        CAPTURE(r.g);
        const SetMap& g = d.map_named(r.g);
        ChainVerdict outer = chain_upper(f, g, {0}, {0}, CoderivKind::convexified, ChainVariant::co_outer);
        ChainVerdict both = chain_upper(f, g, {0}, {0}, CoderivKind::convexified, ChainVariant::co_both);
        CHECK(outer.certified);
        CHECK(outer.relation == r.first);
        CHECK(compare(outer.rhs.graph, both.rhs.graph) == r.second);
    }
}

TEST_CASE("tightness example values") {
    Document d = doc("tightness.vi");
    const SetMap& f = d.map_named("F");
    ChainVerdict g1 = chain_upper(f, d.map_named("G1"), {0}, {0}, CoderivKind::convexified, ChainVariant::co_both);
    ChainVerdict g2 = chain_upper(f, d.map_named("G2"), {0}, {0}, CoderivKind::convexified, ChainVariant::co_both);
    for (int u : {-2, -1, 1, 3}) {
        Rat a = u < 0 ? Rat(-u) : Rat(u);
        CHECK(eval(g1.lhs, {Rat(u)}) == points({a}));
        CHECK(eval(g1.rhs, {Rat(u)}) == PolyUnion(interval(0, a)));
        CHECK(eval(g2.lhs, {Rat(u)}).is_empty());
        CHECK(eval(g2.rhs, {Rat(u)}) == PolyUnion(interval(0, a)));
    }
    CHECK(eval(g2.lhs, {0}) == points({0}));
}

TEST_CASE("chain rule upper bound holds where the qualification condition does") {
    Document d = doc("tightness.vi");
    Document w = doc("filtered.vi");
    std::vector<std::tuple<SetMap, SetMap, Vec, Vec>> cases = {
        {d.map_named("F"), d.map_named("G1"), {0}, {0}}, {d.map_named("F"), d.map_named("G2"), {0}, {0}},
        {d.map_named("F"), d.map_named("G3"), {0}, {0}}, {d.map_named("F"), d.map_named("G1"), {1}, {1}},
        {w.map_named("f"), w.map_named("G"), {0}, {Rat(-1, 2)}}, {affine_map({{2}}, {0}), band(), {0}, {2}},
        {d.map_named("G2"), d.map_named("F"), {1}, {-1}},
    };
    std::mt19937_64 rng(41);
    while (cases.size() < 20) {
        SetMap f = random_map(rng, 2), g = random_map(rng, 2);
        SetMap fg = compose(f, g);
        if (fg.graph.is_empty()) continue;
        const Polyhedron& piece = fg.graph.pieces()[rng() % fg.graph.size()];
        const Vec& v = piece.vertices()[rng() % piece.vertices().size()];
        cases.emplace_back(f, g, Vec{v[0]}, Vec{v[1]});
    }
    int certified = 0;
    for (auto& [f, g, x, z] : cases) {
        for (CoderivKind k : {CoderivKind::limiting, CoderivKind::convexified}) {
            ChainVerdict v = chain_upper(f, g, x, z, k);
            if (!v.certified) continue;
            ++certified;
            CHECK(v.rhs.graph.includes(v.lhs.graph));
            CHECK((v.relation == Relation::equal || v.relation == Relation::strict_subset));
        }
    }
    CHECK(certified >= 20);
}

TEST_CASE("graph-convex composition is exact") {
    ConvexChain c = chain_convex_exact(affine_map({{2}}, {0}), band(), {0}, {2});
    CHECK(c.independent);
    CHECK(c.matches_direct);
    CHECK(c.cq_ok);
    CHECK(eval(c.composed, {-1}) == points({-2}));
    CHECK(eval(c.composed, {1}).is_empty());

    // interior point of the composed band: several intermediate points
    ConvexChain mid = chain_convex_exact(affine_map({{2}}, {0}), band(), {0}, {1});
    CHECK(mid.independent);
    CHECK(mid.matches_direct);
    CHECK(eval(mid.composed, {0}) == points({0}));

    Matrix a = {{1, 2}, {-1, 0}}, b = {{3, -1}};
    ConvexChain lin = chain_convex_exact(affine_map(b, {0}), affine_map(a, {0, 0}), {1, 1}, {10});
    CHECK(lin.matches_direct);
    Vec expect = mat_vec(transpose(a, 2), mat_vec(transpose(b, 2), {Rat(1, 2)}));
    CHECK(eval(lin.composed, {Rat(1, 2)}) == PolyUnion(Polyhedron::point(expect)));

    CHECK_THROWS(chain_convex_exact(doc("tightness.vi").map_named("F"), band(), {0}, {1}));
}

TEST_CASE("marginal function examples") {
    MarginalEstimate e = marginal_subdiff(value_of_y(), band(), {0}, MarginalMode::convex);
    CHECK(e.exact);
    CHECK(e.value == -1);
    CHECK(e.estimate == points({1}));
    CHECK(e.argmin == points({-1}));

    Document d = doc("tightness.vi");
    MarginalEstimate g2 = marginal_subdiff(value_of_y(), d.map_named("G2"), {0}, MarginalMode::limiting);
    CHECK(g2.value == 0);
    CHECK(g2.estimate.includes(points({0, 1})));
    CHECK_FALSE(g2.exact);
    MarginalEstimate g2c = marginal_subdiff(value_of_y(), d.map_named("G2"), {0}, MarginalMode::clarke);
    CHECK(g2c.estimate.includes(PolyUnion(interval(0, 1))));

    // phi does not depend on y
    MinMaxAffine absx{2, {{AffineRow{{1, 0}, 0}, AffineRow{{-1, 0}, 0}}}};
    CHECK(marginal_subdiff(absx, band(), {0}, MarginalMode::limiting).estimate == PolyUnion(interval(-1, 1)));
    CHECK(marginal_subdiff(absx, band(), {2}, MarginalMode::limiting).estimate == points({1}));
    CHECK_THROWS(marginal_subdiff(value_of_y(), d.map_named("G2"), {0}, MarginalMode::convex));
}

TEST_CASE("convex marginal subdifferential matches brute-force minimization") {
    std::mt19937_64 rng(42);
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        AffineRow lo{{rq(rng, -2, 2, 1)}, rq(rng, -8, 0)};
        AffineRow hi{lo.coeffs, lo.constant + rq(rng, 1, 12)};
        if (trial % 3 == 0) hi.coeffs[0] = lo.coeffs[0] + 1;
        std::vector<AffineRow> rows;
        for (int i = 0; i < 3; ++i) rows.push_back(AffineRow{{rq(rng, -3, 3, 1), rq(rng, -3, 3, 1)}, rq(rng, -8, 8)});
        Vec x = {rq(rng, 0, 8, 2)};
        // {lo <= y <= hi} as a convex graph
        Polyhedron graph(2, {{{lo.coeffs[0], -1}, -lo.constant}, {{-hi.coeffs[0], 1}, hi.constant}});
        SetMap g(1, 1, PolyUnion(graph));
        MinMaxAffine phi{2, {rows}};

        Rat h(1, 1000000);
        Rat f0 = brute_min(rows, lo, hi, x[0]);
        Rat left = (f0 - brute_min(rows, lo, hi, x[0] - h)) / h;
        Rat right = (brute_min(rows, lo, hi, x[0] + h) - f0) / h;
        MarginalEstimate e = marginal_subdiff(phi, g, x, MarginalMode::convex);
        CHECK(e.exact);
        CHECK(e.value == f0);
        CHECK(e.estimate == PolyUnion(interval(left, right)));
        ++checked;
    }
    CHECK(checked == 40);
}

TEST_CASE("filtered chain rule is not an upper bound") {
    Document w = doc("filtered.vi");
    const SetMap& g = w.map_named("G");
    const SetMap& f = w.map_named("f");
    CHECK(wp_filtered_chain(f, g, {0}, {Rat(-1, 2)}, {-1}).is_empty());
    CoderivAtPoint direct = coderivative(compose(f, g), {0}, {Rat(-1, 2)}, CoderivKind::limiting);
    CHECK(coderiv_apply(direct, {-1}) == points({1}));
    CoderivAtPoint co = coderivative(compose(f, g), {0}, {Rat(-1, 2)}, CoderivKind::convexified);
    CHECK(coderiv_apply(co, {-1}) == points({1}));
}

TEST_CASE("filtered chain rule on convex-valued and single-valued maps") {
    SetMap twice = affine_map({{2}}, {0});
    for (int r : {-3, -1, 1, 2}) {
        PolyUnion filtered = wp_filtered_chain(twice, band(), {0}, {2}, {Rat(r)});
        CoderivAtPoint direct = coderivative(compose(twice, band()), {0}, {2}, CoderivKind::convexified);
        CHECK(filtered.includes(coderiv_apply(direct, {Rat(r)})));
    }
    SetMap g = affine_map({{3}}, {1});
    for (int r : {-2, 1}) {
        PolyUnion filtered = wp_filtered_chain(twice, g, {1}, {8}, {Rat(r)});
        ChainVerdict plain = chain_upper(twice, g, {1}, {8}, CoderivKind::convexified);
        CHECK(filtered == eval(plain.rhs, {Rat(r)}));
        CHECK(filtered == points({Rat(6 * r)}));
    }
}
