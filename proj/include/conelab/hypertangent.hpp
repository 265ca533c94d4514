#pragma once

#include "conelab/uts.hpp"

namespace conelab {

/// Raised when a direction admits no positive hypertangency radius.
class NotHypertangent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lower estimate of the hypertangency radius eps(v) = sup{eta in
/// (0,1) : y + lambda (v + eta B) stays in S}, floored to the grid
/// (multiples of 1/grid).  For a convex single-piece host the Euclidean
/// facet distances give the exact value before flooring; union hosts
/// fall back to an exact sup-norm tube containment (a sound lower
/// bound, since the box contains the Euclidean ball).
Rat hypertangent_epsilon(const UnionSet& u, const Vec& v, int grid);

/// The discrete open-uniform-tangent-set construction: D is the set of
/// points eps(v) * v over the supplied directions, certified as a
/// uniform tangent set; its conical hull must sit inside the Clarke
/// tangent cone.
UniformTangentSetCandidate open_uts_from_hypertangents(const UnionSet& u,
                                                       const std::vector<Vec>& directions,
                                                       int grid);

} // namespace conelab
