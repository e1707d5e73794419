// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "helpers.hpp"
#include "setvar/chainrules.hpp"
#include "setvar/dd.hpp"
#include "setvar/limits.hpp"
#include "setvar/oracle.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

using namespace setvar;
using namespace testing;

namespace {

PolyUnion points(std::initializer_list<Rat> xs) {
    std::vector<Polyhedron> ps;
    for (const Rat& x : xs) ps.push_back(Polyhedron::point({x}));
    return PolyUnion(1, ps);
}

SetMap box_map() { return SetMap(1, 1, PolyUnion(Polyhedron(2, {{{0, 1}, 1}, {{0, -1}, 1}}))); }

struct Check {
    bool ok = true;
    std::string why;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

bool counterexample(Check& c) {
    Document w = doc("filtered.vi");
    const SetMap& g = w.map_named("G");
    const SetMap& f = w.map_named("f");
    c.require(coderiv_apply(coderivative(g, {0}, {1}, CoderivKind::limiting), {1}) == points({1}), "D*G(0|1)(1)");
    c.require(coderiv_apply(coderivative(f, {1}, {Rat(-1, 2)}, CoderivKind::limiting), {-1}) == points({1}),
              "D*f(1|-1/2)(-1)");
    c.require(coderiv_apply(coderivative(compose(f, g), {0}, {Rat(-1, 2)}, CoderivKind::limiting), {-1}) == points({1}),
              "D*(f∘G)(0|-1/2)(-1)");
    c.require(wp_filtered_chain(f, g, {0}, {Rat(-1, 2)}, {-1}).is_empty(), "filtered chain is not empty");
    return c.ok;
}

bool tightness_pattern(Check& c) {
    Document d = doc("tightness.vi");
    const SetMap& f = d.map_named("F");
    struct Row {
        const char* g;
        Relation first, second;
    };
    for (Row r : {Row{"G1", Relation::equal, Relation::strict_subset},
                  Row{"G2", Relation::strict_subset, Relation::equal},
                  Row{"G3", Relation::strict_subset, Relation::strict_subset}}) {
        const SetMap& g = d.map_named(r.g);
        ChainVerdict outer = chain_upper(f, g, {0}, {0}, CoderivKind::convexified, ChainVariant::co_outer);
        ChainVerdict both = chain_upper(f, g, {0}, {0}, CoderivKind::convexified, ChainVariant::co_both);
        Relation second = compare(outer.rhs.graph, both.rhs.graph);
        c.require(outer.certified, std::string(r.g) + " not certified");
        c.require(outer.relation == r.first && second == r.second,
                  std::string(r.g) + " gave (" + symbol(outer.relation) + ", " + symbol(second) + ")");
    }
    return c.ok;
}

bool step_identity(Check& c) {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        SetMap f = random_map(rng, 2);
        Rat dt = rq(rng, 1, 6, 4);
        SetMap m = step_map(f, dt);
        for (const Polyhedron& p : f.graph.pieces())
            for (const Vec& z : {p.vertices()[0], p.relative_interior_point()}) {
                Vec x = {z[0]}, y = {z[0] + dt * z[1]};
                for (CoderivKind k : {CoderivKind::regular, CoderivKind::limiting, CoderivKind::convexified}) {
                    PolyUnion shifted = coderivative(f, x, {z[1]}, k).as_map().graph.linear_image({{1, 0}, {1, dt}}, 2);
                    c.require(coderivative(m, x, y, k).as_map().graph.set_equal(shifted),
                              "trial " + std::to_string(trial) + " kind " + to_string(k));
                }
            }
    }
    return c.ok;
}

bool reachable_soundness(Check& c) {
    DiscreteInclusion tv = inclusion_from(doc("twovel.vi"));
    for (int N = 2; N <= 6; ++N) {
        DiscreteInclusion di = tv.with_steps(N);
        for (int j = -N; j <= N; j += 2) {
            Vec xN = {Rat(j) / N};
            PathSet ps = enumerate_paths(di, {0}, xN, PathMode::finite);
            c.require(ps.exhaustive, "path enumeration not exhaustive");
            PathCones cones = coderiv_reachable(di, ps);
            c.require(cones.cone.graph.includes(direct_coderiv_reachable(di, {0}, xN).graph),
                      "bound fails at N=" + std::to_string(N) + " xN=" + to_string(xN[0]));
        }
    }
    for (int N : {2, 3}) {
        DiscreteInclusion b = DiscreteInclusion::make(1, 1, N, {box_map()});
        for (const Rat& xN : {Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 3), Rat(1)}) {
            PathSet ps = enumerate_paths(b, {0}, {xN}, PathMode::vertex);
            c.require(!ps.paths.empty(), "no paths for interval dynamics");
            SetMap direct = direct_coderiv_reachable(b, {0}, {xN});
            for (const SetMap& cone : coderiv_reachable(b, ps).per_path)
                c.require(cone.graph.set_equal(direct.graph), "interval dynamics cone depends on the path");
        }
    }
    return c.ok;
}

bool certification(Check& c) {
    Document d = doc("certify.vi");
    DiscreteInclusion di = inclusion_from(d);
    const MinMaxAffine& phi = d.objectives.at(0).second;
    c.require(di.N == 8, "fixture is not N = 8");
    Certificate ok = certify_path(di, doc("path_opt.vi").paths.at(0), phi);
    c.require(ok.found, "optimal path refuted");
    for (const Vec& p : ok.costates) c.require(p == Vec{1}, "costate is not constant 1");
    c.require(ok.found && verify_certificate(di, ok, phi), "certificate does not verify");
    c.require(!certify_path(di, doc("path_zero.vi").paths.at(0), phi).found, "path from 0 certified");
    return c.ok;
}

bool marginal_exact(Check& c) {
    Document band = doc("band.vi");
    DiscreteInclusion di = inclusion_from(band);
    const MinMaxAffine& phi = band.objectives.at(0).second;
    for (const Rat& x0 : {Rat(0), Rat(1, 2), Rat(-3)}) {
        InclusionSubdiff s = subdiff_upper(di, phi, {x0});
        c.require(s.estimate == points({1}), "estimate at " + to_string(x0) + " is not {1}");
        c.require(s.exact, "estimate not flagged exact");
        c.require(s.value == x0 - di.T, "value is not x0 - T");
    }
    return c.ok;
}

bool convergence(Check& c) {
    Document g = doc("growth.vi");
    DiscreteInclusion di = inclusion_from(g);
    ConvergenceTable t = hausdorff_convergence(di, {10, 100}, {1}, g.reference);
    for (const ConvergenceRow& r : t.rows) {
        double expect = std::abs(std::exp(1.0) - std::pow(1.0 + 1.0 / r.N, r.N));
        c.require(std::abs(r.distance.value - expect) <= 1e-6, "N=" + std::to_string(r.N) + " off by more than 1e-6");
    }
    ConvergenceTable doubling = hausdorff_convergence(di, {10, 20, 40, 80, 160}, {1}, g.reference);
    c.require(t.strictly_decreasing && doubling.strictly_decreasing, "distances not strictly decreasing");
    return c.ok;
}

bool nested_hulls(Check& c) {
    std::mt19937_64 rng(108);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<PolyUnion> seq = {random_intervals(rng, 2 + trial % 4)};
        for (int i = 1; i < 2 + trial % 5; ++i) {
            PolyUnion cur = seq.back();
            Polyhedron h = cur.hull();
            Rat lo = h.vertices().front()[0], hi = h.vertices().back()[0];
            if (lo > hi) std::swap(lo, hi);
            Rat len = hi - lo;
            PolyUnion next = cur.intersect(interval(lo + len * rq(rng, 0, 2, 8), hi - len * rq(rng, 0, 2, 8)));
            if (next.is_empty()) break;
            seq.push_back(next);
        }
        NestedHullReport r = nested_hull_check(seq, true);
        c.require(r.nested && r.equal, "family " + std::to_string(trial));
    }
    return c.ok;
}

bool oracle_agreement(Check& c) {
    Document d = doc("tightness.vi");
    for (const char* name : {"G1", "G2", "G3", "F"})
        for (CoderivKind k : {CoderivKind::regular, CoderivKind::limiting}) {
            const PolyUnion& graph = d.map_named(name).graph;
            SampleReport r = sample_normals(graph, {0, 0}, k, {}, 1000, 1e-2, 7);
            SampleReport again = sample_normals(graph, {0, 0}, k, {}, 1000, 1e-2, 7);
            c.require(r.tested == 1000 && r.rate() >= 0.99, std::string(name) + " rate " + std::to_string(r.rate()));
            c.require(r.agreements == again.agreements && r.disagreements == again.disagreements,
                      std::string(name) + " not reproducible");
        }
    return c.ok;
}

bool kernel_properties(Check& c) {
    std::mt19937_64 rng(110);
    for (int trial = 0; trial < 100; ++trial) {
        int d = 2 + trial % 3;
        Polyhedron k = random_cone(rng, d, 1 + trial % 4);
        c.require(k.polar().polar() == k, "polar involution");
        ConeGenerators facets = cone_facets(d, k.rays(), k.lines());
        ConeGenerators back = cone_generators(d, facets.rays, facets.lines);
        c.require(Polyhedron::cone(d, back.rays, back.lines) == k, "double description round trip");
    }
    for (int trial = 0; trial < 20; ++trial) {
        SetMap a = random_map(rng, 1 + trial % 2), b = random_map(rng, 2), m = random_map(rng, 1);
        c.require(compose(m, compose(b, a)).graph.set_equal(compose(compose(m, b), a).graph), "compose associativity");
        c.require(inverse(inverse(b)).graph == b.graph, "inverse involution");
    }
    return c.ok;
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double limit_s;  // 0 means no time limit
        std::function<bool(Check&)> run;
    };
    const std::vector<Criterion> criteria = {
        {"counterexample to the filtered chain rule", 1, counterexample},
        {"tightness pattern of the convexified chain rule", 5, tightness_pattern},
        {"step map coderivative identity", 0, step_identity},
        {"reachable map coderivative bound", 0, reachable_soundness},
        {"certification fixture", 1, certification},
        {"marginal exactness on the band fixture", 0, marginal_exact},
        {"convergence table for the growth fixture", 10, convergence},
        {"hull of nested intersections", 0, nested_hulls},
        {"sampled normal cone agreement", 30, oracle_agreement},
        {"kernel properties", 0, kernel_properties},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& cr = criteria[i];
        Check c;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = cr.run(c);
        } catch (const std::exception& e) {
            c.why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok && cr.limit_s > 0 && secs >= cr.limit_s) {
            ok = false;
            c.why = "exceeded " + std::to_string(cr.limit_s) + " s";
        }
        if (!ok) ++failed;
        std::printf("%s %2zu %-48s %.3fs%s%s\n", ok ? "PASS" : "FAIL", i + 1, cr.name, secs, ok ? "" : "  ",
                    ok ? "" : c.why.c_str());
    }
    return failed == 0 ? 0 : 1;
}
