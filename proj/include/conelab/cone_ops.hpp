#pragma once

#include "conelab/polyhedron.hpp"

namespace conelab {

/// Raised by verify_polar_sandwich when an input misses the origin
/// (the proposition assumes sets containing the origin).
class OriginMissing : public InputError {
public:
    using InputError::InputError;
};

/// Verdicts for the two polar chains
///   (A+B)° ⊆ A°∩B° ⊆ 2(A+B)°   and   (A∩B)° ⊆ cl(A°+B°) ⊆ 2(A∩B)°.
struct SandwichReport {
    bool sum_polar_in_meet_of_polars = false;
    bool meet_of_polars_in_two_sum_polar = false;
    bool meet_polar_in_sum_of_polars = false;
    bool sum_of_polars_in_two_meet_polar = false;
    bool all_hold() const {
        return sum_polar_in_meet_of_polars && meet_of_polars_in_two_sum_polar &&
               meet_polar_in_sum_of_polars && sum_of_polars_in_two_meet_polar;
    }
};

/// a, b must be bounded polytopes containing the origin.
SandwichReport verify_polar_sandwich(const Polyhedron& a, const Polyhedron& b);

/// Cone transversality per rho*ball in cl((C1 ∩ B) - (C2 ∩ B)).
/// The Euclidean unit ball is bracketed by the cross-polytope (inner)
/// and the unit box (outer); rho is reported as an exact squared
/// bracket.  The bracket ends can only differ in value, never in sign,
/// so the verdict itself is exact.
struct TransversalityRadiusResult {
    bool transversal = false;
    Rat rho_sq_inner;   // certified: rho_inner * ball fits inside the difference
    Rat rho_sq_outer;   // upper end of the bracket
    // diagnostic: the same radius for the "+"-variant (sum instead of
    // difference of the truncated cones)
    bool plus_transversal = false;
    Rat rho_plus_sq_inner;
    Rat rho_plus_sq_outer;
    Halfspace witness;  // separating halfspace through 0 when not transversal
};

TransversalityRadiusResult transversality_radius(const PolyhedralCone& c1,
                                                 const PolyhedralCone& c2);

/// The cone viewed as an (unbounded) polyhedron.
Polyhedron cone_as_polyhedron(const PolyhedralCone& c);

/// Largest rho^2 such that the ball of radius rho fits inside the
/// polytope (min over facets of offset^2/|normal|^2).  Requires the
/// origin strictly inside; returns 0 otherwise.
Rat inscribed_ball_radius_sq(const Polyhedron& p);

} // namespace conelab
