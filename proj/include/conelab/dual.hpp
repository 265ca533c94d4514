#pragma once

#include "conelab/lp.hpp"

#include <vector>

namespace conelab {

/// Generator description of a polyhedral cone: extreme rays of the
/// quotient by the lineality space (taken inside the orthogonal
/// complement, which makes them canonical) plus a lineality basis.
struct ConeGenerators {
    std::vector<Vec> rays;
    std::vector<Vec> lines;
};

/// Generators of {x in R^n : <a, x> <= 0 for every a in normals}.
/// Brute-force extreme-ray enumeration over (n-1)-subsets; exact and
/// intended for the ambient dimensions this project caps at.
ConeGenerators dual_rays(const std::vector<Vec>& normals, std::size_t n);

/// H-rep -> V-rep of a homogeneous cone.  Throws InputError if any
/// offset is nonzero.  Lines are returned as opposite ray pairs.
std::vector<Vec> double_description(const std::vector<Halfspace>& cone_h, std::size_t n);

/// V-rep -> H-rep (the inverse direction): facet normals of cone(generators).
std::vector<Halfspace> double_description_inverse(const std::vector<Vec>& generators,
                                                  std::size_t n);

} // namespace conelab
