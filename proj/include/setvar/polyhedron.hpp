#pragma once

#include "setvar/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace setvar {

/// normal . z <= offset (inequality) or normal . z == offset (equality)
struct Halfspace {
    Vec normal;
    Rat offset;
};

/// Fourier-Motzkin elimination of every coordinate not listed in `keep`.
/// Equalities are used for substitution first; inequality combinations are
/// pruned with Chernikov's history rule and pairwise dominance. Returned
/// constraints are expressed in the kept coordinates, in `keep` order.
/// `infeasible` is set when a contradiction 0 <= negative appears.
struct Elimination {
    std::vector<Halfspace> ineqs;
    std::vector<Halfspace> eqs;
    bool infeasible = false;
};
Elimination fourier_motzkin(int dim, const std::vector<Halfspace>& ineqs, const std::vector<Halfspace>& eqs,
                            const std::vector<int>& keep);

/// Exact feasibility by elimination down to dimension 0.
bool fm_feasible(int dim, const std::vector<Halfspace>& ineqs, const std::vector<Halfspace>& eqs);

class Polyhedron;

/// min c.z over a nonempty polyhedron; nullopt when unbounded below.
std::optional<Rat> minimize(const Polyhedron& p, const Vec& c);

/// Convex polyhedron in R^dim with both an H- and a V-representation held in
/// canonical minimal form. Immutable; the canonical form is computed once at
/// construction, so equal sets compare equal and serialize identically.
class Polyhedron {
public:
    Polyhedron(int dim, std::vector<Halfspace> ineqs, std::vector<Halfspace> eqs = {});

    static Polyhedron universe(int dim);
    static Polyhedron empty(int dim);
    static Polyhedron point(const Vec& p);
    static Polyhedron box(const Vec& lo, const Vec& hi);
    /// conv(points) + cone(rays) + span(lines). A cone is given with
    /// points = {0}. With no points the result is empty.
    static Polyhedron from_generators(int dim, const Matrix& points, const Matrix& rays = {},
                                      const Matrix& lines = {});
    static Polyhedron cone(int dim, const Matrix& rays, const Matrix& lines = {});

    int dim() const { return dim_; }
    const std::vector<Halfspace>& inequalities() const { return ineqs_; }
    const std::vector<Halfspace>& equalities() const { return eqs_; }
    const Matrix& vertices() const { return verts_; }
    const Matrix& rays() const { return rays_; }
    const Matrix& lines() const { return lines_; }

    bool is_empty() const { return verts_.empty(); }
    bool is_bounded() const { return rays_.empty() && lines_.empty(); }
    /// Nonempty and invariant under positive scaling.
    bool is_cone() const;
    bool is_universe() const { return !is_empty() && ineqs_.empty() && eqs_.empty(); }
    /// Dimension of the affine hull; -1 when empty.
    int affine_dim() const;

    bool contains(const Vec& z) const;
    /// other is a subset of this
    bool includes(const Polyhedron& other) const;
    /// A point in the relative interior (barycenter of vertices plus the sum
    /// of rays).
    Vec relative_interior_point() const;
    /// Indices of inequalities tight at z.
    std::vector<int> active_at(const Vec& z) const;

    Polyhedron intersect(const Polyhedron& other) const;
    /// Orthogonal projection onto the coordinates in `keep` (in that order),
    /// via Fourier-Motzkin.
    Polyhedron project(const std::vector<int>& keep) const;
    /// Projection computed from the generators instead (independent route).
    Polyhedron project_generators(const std::vector<int>& keep) const;
    /// {z in R^{cols} : M z + c in P}; M has dim() rows.
    Polyhedron affine_preimage(const Matrix& m, const Vec& c, int cols) const;
    /// {M z : z in P}; M has `rows` rows of length dim().
    Polyhedron linear_image(const Matrix& m, int rows) const;
    /// Places coordinate i at position positions[i] of R^new_dim; the other
    /// coordinates are free.
    Polyhedron embed(int new_dim, const std::vector<int>& positions) const;
    /// Fixes the coordinates in `fixed` to `values`; result lives in the
    /// remaining coordinates (in increasing order).
    Polyhedron slice(const std::vector<int>& fixed, const Vec& values) const;
    Polyhedron minkowski_sum(const Polyhedron& other) const;
    /// Polar cone {y : y.z <= 0 for all z in P}; requires is_cone().
    Polyhedron polar() const;
    /// Tangent cone at a point of P (active constraints only).
    Polyhedron tangent_cone(const Vec& at) const;
    /// Exact squared Euclidean distance from z (P nonempty).
    Rat distance2(const Vec& z) const;
    /// Nearest point of P to z (P nonempty, exact).
    Vec nearest_point(const Vec& z) const;

    /// Canonical text block (`piece` ... `end`). With generators the block
    /// also carries `gen`/`lin` lines (used for cones).
    std::string serialize(bool with_generators = false) const;
    const std::string& key() const { return key_; }

    friend bool operator==(const Polyhedron& a, const Polyhedron& b) { return a.key_ == b.key_; }
    friend bool operator<(const Polyhedron& a, const Polyhedron& b) { return a.key_ < b.key_; }

private:
    Polyhedron() = default;
    void canonicalize_from_generators(Matrix homog_rays, Matrix homog_lines);
    void set_empty();

    int dim_ = 0;
    std::vector<Halfspace> ineqs_;
    std::vector<Halfspace> eqs_;
    Matrix verts_;
    Matrix rays_;
    Matrix lines_;
    std::string key_;
};

}  // namespace setvar
