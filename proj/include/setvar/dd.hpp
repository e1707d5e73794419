#pragma once

#include "setvar/rational.hpp"

namespace setvar {

/// Minimal generating system of a polyhedral cone: extreme rays modulo the
/// lineality space, plus a basis of that space. Rays are primitive integer
/// vectors.
struct ConeGenerators {
    Matrix rays;
    Matrix lines;
};

/// Double description (Motzkin) conversion of {z : A z <= 0, E z = 0} in R^d.
/// Adjacency is decided combinatorially from the zero sets of the rays.
ConeGenerators cone_generators(int d, const Matrix& ineqs, const Matrix& eqs);

/// Halfspace form of cone(rays) + span(lines): returns {normals a : a.z <= 0}
/// as `rays` and equality normals as `lines` (the polar's generators).
ConeGenerators cone_facets(int d, const Matrix& rays, const Matrix& lines);

}  // namespace setvar
