#pragma once

#include "setvar/polyhedron.hpp"

#include <vector>

namespace setvar {

/// One relative-interior point for every nonempty face of the arrangement
/// cut out of `region` by the given hyperplanes (normal . z = offset). Faces
/// are sign patterns (<, =, >) with respect to each hyperplane; the result is
/// ordered deterministically.
std::vector<Vec> strata_points(const Polyhedron& region, const std::vector<Halfspace>& hyperplanes);

/// Faces of a central arrangement in R^d, one representative each (the
/// origin included).
std::vector<Vec> central_face_points(int d, const Matrix& normals);

}  // namespace setvar
