#pragma once

#include "setvar/inclusion.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace setvar {

/// Piecewise-linear path through states at times j*dt.
struct InterpolatedPath {
    Rat T;
    Rat dt;
    std::vector<Vec> states;

    Vec value(const Rat& t) const;
    /// Derivative on the open interval containing t; breakpoints are errors.
    Vec derivative(const Rat& t) const;
};
InterpolatedPath interpolate(const Path& states, const Rat& T);

struct ConvergenceRow {
    int N = 0;
    HausdorffResult distance;
    PolyUnion reach{0};
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    /// no reference was given; the largest N stands in for it
    bool proxy = false;
    bool strictly_decreasing = true;
    PolyUnion reference{0};
};
ConvergenceTable hausdorff_convergence(const DiscreteInclusion& di, const std::vector<int>& Ns, const Vec& x0,
                                       const std::optional<PolyUnion>& reference,
                                       std::size_t budget = default_piece_budget);

struct PiCell {
    int N = 0;
    Rat delta;
    /// hull of Π_i(x, y, v) over i >= N in the list and the perturbed endpoints
    Polyhedron hull = Polyhedron::empty(0);
    /// largest snap distance (squared) of a perturbed endpoint
    Rat max_snap2;
    int endpoints = 0;
    bool exhaustive = true;
};

struct PiStability {
    std::vector<PiCell> cells;
    /// intersection of all cells
    Polyhedron intersection = Polyhedron::empty(0);
    /// Π at the largest N without perturbation
    PolyUnion largest{0};
    /// the intersection equals the hull of Π at the largest N
    bool matches = false;
};
PiStability pi_stability(const DiscreteInclusion& di, const Vec& xbar, const Vec& ybar, const Vec& v,
                         const std::vector<int>& Ns, const std::vector<Rat>& deltas, int samples = 8,
                         std::uint64_t seed = 1, std::size_t budget = default_piece_budget);

struct NestedHullReport {
    bool nested = true;
    Polyhedron hull_of_intersection = Polyhedron::empty(0);
    Polyhedron intersection_of_hulls = Polyhedron::empty(0);
    bool equal = false;
};
/// co of the intersection against the intersection of the hulls, for a
/// finite prefix of a (nested) family of bounded unions.
NestedHullReport nested_hull_check(const std::vector<PolyUnion>& sets, bool require_nested);

}  // namespace setvar
