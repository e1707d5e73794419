#pragma once

#include "setvar/inclusion.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace setvar {

struct SampleReport {
    int tested = 0;
    int agreements = 0;
    std::vector<std::string> disagreements;
    std::vector<Rat> radii;
    std::uint64_t seed = 0;
    /// extreme rays and lines of the exact cone, and how many the sampler accepted
    int rays = 0;
    int rays_recovered = 0;

    double rate() const { return tested == 0 ? 1.0 : static_cast<double>(agreements) / tested; }
};

/// Classifies random unit directions as normal or not at xbar from the
/// values max <y, x - b> over points x of U near basepoints b, and compares
/// with the exact cone. A direction passes at radius r when that maximum is
/// at most tau * r, with tau halving along the radii; it is normal when it
/// passes at every radius. The limiting kind also tries basepoints on the
/// faces of U through xbar at two scales.
SampleReport sample_normals(const PolyUnion& u, const Vec& xbar, CoderivKind kind, std::vector<Rat> radii = {},
                            int samples = 1000, double tol = 1e-2, std::uint64_t seed = 1);

/// Exact points of R_N(x0): at every step the vertices of M_k(x) and the
/// lattice points of spacing grid_step in M_k(x), for each point x so far.
struct GridCloud {
    std::vector<Vec> points;
    int steps = 0;
};
GridCloud grid_reachable(const DiscreteInclusion& di, const Vec& x0, const Rat& grid_step,
                         std::size_t cap = 200000);

/// Gradients of f at random points near xbar where one row is strictly
/// active, their hull, and its comparison with the exact Clarke set.
struct SubdiffSample {
    std::vector<Vec> gradients;
    Polyhedron hull = Polyhedron::empty(0);
    Polyhedron clarke = Polyhedron::empty(0);
    /// hull ⊂ exact Clarke subdifferential
    bool inside = false;
    /// every vertex of the exact set is within tol of the hull
    bool covers = false;
    int tested = 0;
    std::uint64_t seed = 0;
};
SubdiffSample sample_subdiff(const MinMaxAffine& f, const Vec& xbar, int samples = 200, const Rat& radius = Rat(1, 1000),
                             double tol = 1e-2, std::uint64_t seed = 1);

}  // namespace setvar
