#pragma once

#include "setvar/setmap.hpp"

#include <string>
#include <vector>

namespace setvar {

/// Union of the tangent cones of the pieces containing xbar.
VCone tangent_cone(const PolyUnion& u, const Vec& xbar);
/// Polar of the tangent cone: intersection of the piece polars.
VCone regular_normal_cone(const PolyUnion& u, const Vec& xbar);
/// Union of the regular normal cones over the faces of the local
/// arrangement at xbar (every face whose closure contains xbar).
VCone limiting_normal_cone(const PolyUnion& u, const Vec& xbar);

enum class CoderivKind { regular, limiting, convexified };
std::string to_string(CoderivKind k);
CoderivKind parse_kind(const std::string& s);

/// Graph of D*S(xbar|ybar) in (u, v) coordinates, u in R^m, v in R^n:
/// v in D*S(u) iff (v, -u) is normal to the graph at (xbar, ybar).
/// For the convexified kind the stored cone is the limiting one and values
/// are hulled per query (or the whole graph is hulled when graph_hull is set).
struct CoderivAtPoint {
    Vec xbar, ybar;
    int n = 0, m = 0;
    VCone graph{0};
    CoderivKind kind = CoderivKind::limiting;
    bool graph_hull = false;

    /// The coderivative as a map u ↦ D*S(u) (input m, output n) with the
    /// kind's convexification applied.
    SetMap as_map() const;
};

CoderivAtPoint coderivative(const SetMap& s, const Vec& xbar, const Vec& ybar, CoderivKind kind,
                            bool graph_hull = false);
PolyUnion coderiv_apply(const CoderivAtPoint& d, const Vec& u);

/// c . z + constant
struct AffineRow {
    Vec coeffs;
    Rat constant;
};

/// f(z) = min over groups of max over rows in the group.
struct MinMaxAffine {
    int dim = 0;
    std::vector<std::vector<AffineRow>> groups;

    Rat value(const Vec& z) const;
    /// Union over groups of the epigraph of the group maximum, in R^{dim+1}.
    PolyUnion epigraph() const;
    bool is_convex() const { return groups.size() == 1; }
};

struct SubdiffTriple {
    PolyUnion limiting{0};
    VCone horizon{0};
    Polyhedron clarke = Polyhedron::empty(0);
};
SubdiffTriple subdifferential(const MinMaxAffine& f, const Vec& xbar);

}  // namespace setvar
