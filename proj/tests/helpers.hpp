#pragma once

#include "setvar/inclusion.hpp"
#include "setvar/textio.hpp"

#include <random>
#include <string>

namespace testing {

using namespace setvar;

inline std::string data(const std::string& name) { return std::string(SETVAR_DATA_DIR) + "/" + name; }

inline Document doc(const std::string& name) { return load_document(data(name)); }

inline Rat rq(std::mt19937_64& rng, int lo, int hi, int den = 4) {
    Rat r(std::uniform_int_distribution<int>(lo, hi)(rng), den);
    r.canonicalize();
    return r;
}

inline Vec rvec(std::mt19937_64& rng, int d, int lo = -8, int hi = 8, int den = 4) {
    Vec v;
    for (int i = 0; i < d; ++i) v.push_back(rq(rng, lo, hi, den));
    return v;
}

/// Interval [a, b] with rational endpoints.
inline Polyhedron interval(const Rat& a, const Rat& b) { return Polyhedron::box(Vec{a}, Vec{b}); }

inline PolyUnion random_intervals(std::mt19937_64& rng, int count, int lo = -16, int hi = 16) {
    std::vector<Polyhedron> pieces;
    for (int i = 0; i < count; ++i) {
        Rat a = rq(rng, lo, hi), len = rq(rng, 0, 6);
        pieces.push_back(interval(a, a + len));
    }
    return PolyUnion(1, pieces);
}

/// Random polytope: convex hull of a few random points.
inline Polyhedron random_polytope(std::mt19937_64& rng, int d, int points = 4) {
    Matrix pts;
    for (int i = 0; i < points; ++i) pts.push_back(rvec(rng, d));
    return Polyhedron::from_generators(d, pts);
}

/// Random pointed or non-pointed cone from a few integer generators.
inline Polyhedron random_cone(std::mt19937_64& rng, int d, int rays = 3) {
    Matrix r;
    for (int i = 0; i < rays; ++i) r.push_back(rvec(rng, d, -3, 3, 1));
    return Polyhedron::cone(d, r);
}

/// Random polyhedral set-valued map R^1 ⇉ R^1 with bounded pieces over a box.
inline SetMap random_map(std::mt19937_64& rng, int pieces = 2) {
    std::vector<Polyhedron> ps;
    for (int i = 0; i < pieces; ++i) ps.push_back(random_polytope(rng, 2, 4));
    return SetMap(1, 1, PolyUnion(2, ps));
}

}  // namespace testing
