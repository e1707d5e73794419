#pragma once

#include "setvar/polyhedron.hpp"

#include <optional>
#include <string>
#include <vector>

namespace setvar {

/// Finite union of convex polyhedra. Empty pieces are dropped, duplicates and
/// pieces contained in another piece are removed, and the remaining pieces
/// are sorted by their canonical text, so equal piece lists serialize alike.
class PolyUnion {
public:
    explicit PolyUnion(int dim, std::vector<Polyhedron> pieces = {});
    PolyUnion(const Polyhedron& p);  // NOLINT(google-explicit-constructor)

    int dim() const { return dim_; }
    const std::vector<Polyhedron>& pieces() const { return pieces_; }
    std::size_t size() const { return pieces_.size(); }
    bool is_empty() const { return pieces_.empty(); }
    bool is_bounded() const;
    bool contains(const Vec& z) const;

    PolyUnion unite(const PolyUnion& other) const;
    PolyUnion intersect(const Polyhedron& p) const;
    PolyUnion intersect(const PolyUnion& other) const;
    PolyUnion project(const std::vector<int>& keep) const;
    PolyUnion slice(const std::vector<int>& fixed, const Vec& values) const;
    PolyUnion embed(int new_dim, const std::vector<int>& positions) const;
    PolyUnion affine_preimage(const Matrix& m, const Vec& c, int cols) const;
    PolyUnion linear_image(const Matrix& m, int rows) const;
    /// Pairwise Minkowski sums of pieces.
    PolyUnion minkowski_sum(const PolyUnion& other) const;

    /// Closed convex hull; empty polyhedron for the empty union.
    Polyhedron hull() const;
    bool is_convex() const;
    /// p is contained in the union (decided by subdivision of p).
    bool covers(const Polyhedron& p) const;
    /// other is a subset of this
    bool includes(const PolyUnion& other) const;
    bool set_equal(const PolyUnion& other) const;
    Rat distance2(const Vec& z) const;
    Vec nearest_point(const Vec& z) const;

    std::string serialize(bool with_generators = false) const;
    friend bool operator==(const PolyUnion& a, const PolyUnion& b) {
        return a.dim_ == b.dim_ && a.pieces_ == b.pieces_;
    }

private:
    int dim_;
    std::vector<Polyhedron> pieces_;
};

/// Substitutes the fixed coordinates and keeps the rest (evaluation of a
/// map from its graph).
PolyUnion union_slice(const PolyUnion& u, const std::vector<int>& fixed, const Vec& values);

/// Hausdorff distance between bounded unions. In dimension 1 the value is
/// exact and rational. Otherwise it is a lower bound from support functions
/// along `dirs` directions and exact vertex-to-set distances; `exact` is set
/// when both unions are convex, in which case the vertex distances are the
/// whole answer.
struct HausdorffResult {
    double value = 0;
    bool exact = false;
    std::optional<Rat> squared;  // exact squared distance when known
    std::optional<Rat> rational;  // exact distance when rational (dimension 1)
};
HausdorffResult hausdorff(const PolyUnion& a, const PolyUnion& b, int dirs = 64);

/// Finite union of polyhedral cones with apex at the origin.
class VCone {
public:
    explicit VCone(int dim, std::vector<Polyhedron> pieces = {});
    explicit VCone(const PolyUnion& u);

    int dim() const { return u_.dim(); }
    const std::vector<Polyhedron>& pieces() const { return u_.pieces(); }
    const PolyUnion& as_union() const { return u_; }
    bool is_convex() const { return u_.is_convex(); }
    std::string serialize() const { return u_.serialize(true); }
    friend bool operator==(const VCone& a, const VCone& b) { return a.u_ == b.u_; }

private:
    PolyUnion u_;
};

/// Closed convex conic hull of the pieces.
VCone cone_hull(const VCone& c);
/// c1 is a subset of c2
bool cone_includes(const VCone& c1, const VCone& c2);
bool cone_equal(const VCone& c1, const VCone& c2);

}  // namespace setvar
