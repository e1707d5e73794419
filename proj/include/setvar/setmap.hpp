#pragma once

#include "setvar/polyunion.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace setvar {

/// S : R^n ⇉ R^m stored as its graph in R^{n+m}, inputs first.
struct SetMap {
    int n = 0;
    int m = 0;
    PolyUnion graph{0};
    /// values are convex hulls of the graph slices (set by convexify_values
    /// when no exact graph is available)
    bool hull_values = false;

    SetMap() = default;
    SetMap(int n_in, int m_out, PolyUnion g, bool hulled = false);

    std::vector<int> inputs() const;
    std::vector<int> outputs() const;
};

PolyUnion eval(const SetMap& s, const Vec& x);
/// S2 ∘ S1
SetMap compose(const SetMap& s2, const SetMap& s1);
/// x ↦ x + dt F(x)
SetMap step_map(const SetMap& f, const Rat& dt);
SetMap inverse(const SetMap& s);
/// S(X) for a set of inputs X
PolyUnion image(const SetMap& s, const PolyUnion& x);
/// x ↦ {A x + c}
SetMap affine_map(const Matrix& a, const Vec& c);
SetMap identity_map(int n);
/// x ↦ V for every x
SetMap constant_map(int n, const PolyUnion& values);

/// Values replaced by their convex hulls. The graph is exact for scalar
/// outputs (m = 1) and for conic graphs with scalar input (n = 1); otherwise
/// the map is marked to hull on evaluation.
SetMap convexify_values(const SetMap& s);

/// Graph of x ↦ co S(x) for a map with conic graph and n = 1: the closed
/// cones over {1} × co S(1) and {-1} × co S(-1), plus {0} × co S(0).
PolyUnion conic_valuewise_hull(const PolyUnion& graph, int n, int m);

/// sup over ‖w‖ <= 1 of sup over z in H(w) of ‖z‖ (Euclidean), for a map
/// with a conic graph. Exact for n = 1; for larger n it is the maximum over
/// extreme rays and is flagged inexact.
struct OuterNorm {
    bool infinite = false;
    Rat squared;
    bool exact = true;
    double value() const;
};
OuterNorm outer_norm(const SetMap& h);

struct Verdict {
    bool pass = true;
    std::string witness;
};

struct PrefanCheckReport {
    Verdict positively_homogeneous;
    Verdict values_convex_compact;
    OuterNorm norm;
    bool is_prefan() const {
        return positively_homogeneous.pass && values_convex_compact.pass && !norm.infinite;
    }
};
PrefanCheckReport check_prefan(const SetMap& h);

/// Sampled test of S(x) ∩ V ⊂ S(x') + H(x - x') + delta‖x - x'‖B near
/// (xbar, ybar). A FAIL carries an exact witness; PASS is only evidence.
struct HDiffReport {
    Verdict verdict;
    std::vector<Rat> radii;
    int tested = 0;
    std::uint64_t seed = 0;
};
HDiffReport check_h_diff(const SetMap& s, const Vec& xbar, const Vec& ybar, const SetMap& h, const Rat& delta,
                         std::vector<Rat> radii = {}, int samples = 16, std::uint64_t seed = 1);

}  // namespace setvar
