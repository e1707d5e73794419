#pragma once

#include "setvar/chainrules.hpp"
#include "setvar/textio.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace setvar {

constexpr std::size_t default_piece_budget = 10000;

/// x_k ∈ x_{k-1} + dt F_{k-1}(x_{k-1}), k = 1..N, dt = T / N.
struct DiscreteInclusion {
    int n = 0;
    Rat T = 1;
    int N = 1;
    Rat dt = 1;
    /// one map per step, or a single time-invariant map
    std::vector<SetMap> dynamics;

    static DiscreteInclusion make(int n, const Rat& T, int N, std::vector<SetMap> dynamics);
    const SetMap& F(int k) const;
    /// M_k : x ↦ x + dt F_k(x)
    SetMap step(int k) const;
    bool time_invariant() const { return dynamics.size() == 1; }
    /// Same dynamics with another step count (time-invariant only).
    DiscreteInclusion with_steps(int steps) const;
};

/// The scenario of a document; `steps` overrides its step count.
DiscreteInclusion inclusion_from(const Document& doc, std::optional<int> steps = std::nullopt);

using Path = std::vector<Vec>;

Vec velocity(const DiscreteInclusion& di, const Path& path, int k);
bool is_feasible(const DiscreteInclusion& di, const Path& path);

PolyUnion reachable(const DiscreteInclusion& di, const Vec& x0, std::size_t budget = default_piece_budget);
SetMap reachable_graph(const DiscreteInclusion& di, std::size_t budget = default_piece_budget);
/// Same graph with the step maps composed from the other end.
SetMap reachable_graph_rightfold(const DiscreteInclusion& di, std::size_t budget = default_piece_budget);

enum class PathMode { finite, vertex, sampled };
std::string to_string(PathMode m);
PathMode parse_path_mode(const std::string& s);

struct PathSet {
    std::vector<Path> paths;
    /// every feasible path is listed
    bool exhaustive = false;
};

/// Feasible paths from x0 to xN. finite: every path, when each F_k(x) is a
/// finite set of points; vertex: paths through vertices of the admissible
/// next-state sets plus one relative-interior path; sampled: random rational
/// convex combinations of those vertices.
PathSet enumerate_paths(const DiscreteInclusion& di, const Vec& x0, const Vec& xN, PathMode mode,
                        std::size_t max_paths = 256, std::uint64_t seed = 1,
                        std::size_t budget = default_piece_budget);
/// finite when possible, vertex otherwise
PathSet enumerate_paths_auto(const DiscreteInclusion& di, const Vec& x0, const Vec& xN,
                             std::size_t budget = default_piece_budget);

/// Composition of the step coderivatives along a path, as the map
/// p_N ↦ p_0 (D*M_0 ∘ ... ∘ D*M_{N-1}).
SetMap path_coderivative(const DiscreteInclusion& di, const Path& path);

struct PathCones {
    SetMap cone;  // union over paths, p_N ↦ p_0
    std::vector<SetMap> per_path;
    bool exhaustive = false;
};
PathCones coderiv_reachable(const DiscreteInclusion& di, const PathSet& paths);
/// D*R_N(x0|xN) computed from the graph of R_N.
SetMap direct_coderiv_reachable(const DiscreteInclusion& di, const Vec& x0, const Vec& xN,
                                std::size_t budget = default_piece_budget);

/// Costate sets P_k reachable backward from p_N: p_{k-1} ∈ p_k + dt D*F_{k-1}(x_{k-1} | v_k)(p_k).
struct AdjointTube {
    std::vector<PolyUnion> sets;  // P_0 .. P_N
    const PolyUnion& initial() const { return sets.front(); }
    bool empty() const { return sets.front().is_empty(); }
};
AdjointTube adjoint_propagate(const DiscreteInclusion& di, const Path& path, const Vec& pN);

struct Certificate {
    bool found = false;
    Path path;
    std::vector<Vec> costates;  // p_0 .. p_N
    Vec transversality;         // (-p_0, p_N)
    std::string reason;         // why no certificate exists
};
/// Searches costates with the Euler-Lagrange inclusions along the path and
/// (-p_0, p_N) in the limiting subdifferential of phi at the endpoints.
Certificate certify_path(const DiscreteInclusion& di, const Path& path, const MinMaxAffine& phi);
bool verify_certificate(const DiscreteInclusion& di, const Certificate& c, const MinMaxAffine& phi);

/// Upper estimate of ∂f(x0) for f(x0) = min over paths of phi(x0, x_N).
struct InclusionSubdiff {
    PolyUnion estimate{0};
    Rat value;
    PolyUnion argmin{0};
    std::vector<Vec> endpoints;
    /// graph-convex dynamics and convex phi: the estimate is ∂f(x0)
    bool exact = false;
    bool exhaustive = true;
};
InclusionSubdiff subdiff_upper(const DiscreteInclusion& di, const MinMaxAffine& phi, const Vec& x0,
                               std::size_t budget = default_piece_budget);

/// Π_N(x, y, v): initial costates over paths from x to y with p_N = v.
struct PiResult {
    PolyUnion set{0};
    bool exhaustive = false;
    std::size_t paths = 0;
};
PiResult adjoint_reachable_pi(const DiscreteInclusion& di, const Vec& x, const Vec& y, const Vec& v,
                              std::size_t budget = default_piece_budget);

}  // namespace setvar
