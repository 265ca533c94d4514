#pragma once

#include "conelab/oracle.hpp"

#include <variant>

namespace conelab {

/// One certification row of a uniform-tangent-set candidate.  Exact
/// rows (trials = 0) were established by polyhedral containment and
/// hold for every positive parameter at or below the stated ones; an
/// eps of 0 on an exact row means "every eps".
struct CertificateRow {
    Rat eps, delta, lambda;
    int trials = 0;
    bool passed = false;
    bool exact = false;
};

/// Candidate uniform tangent set D (a polytope given by its vertices)
/// for the host set at its basepoint, with its certification history.
struct UniformTangentSetCandidate {
    UnionSet host;
    std::vector<Vec> polytope;
    std::vector<CertificateRow> certificate_table;

    bool certified() const;
    bool exactly_certified() const;
};

/// Certifies D against the host.  Two exact paths are tried first:
/// containment of D in a convex piece (subsets of a convex set's
/// difference are uniform tangent sets), and the piecewise tube
/// containment piece + cone(D + eps*B1) ⊆ union (B1 the cross-polytope
/// inner ball).  The supplied rows are then re-checked by the sampling
/// oracle regardless, so every candidate carries an independent row.
UniformTangentSetCandidate certify_uts(const UnionSet& host, std::vector<Vec> polytope,
                                       const std::vector<OracleParams>& sampled_rows);

/// Generic named-check report.
struct PropertyReport {
    struct Item {
        std::string name;
        bool passed = false;
    };
    std::vector<Item> items;
    bool all_passed() const {
        for (const Item& i : items)
            if (!i.passed) return false;
        return !items.empty();
    }
};

/// Uniform-tangent-set calculus: positive scaling, subsets, unions,
/// closures, and (for convex single-piece hosts) the truncated
/// difference (S - x0) ∩ B, each re-certified on the host.
PropertyReport uts_calculus_check(const UniformTangentSetCandidate& d,
                                  const UniformTangentSetCandidate& d_prime, const Rat& c);

/// Strong tangential transversality: rho * ball ⊆ co(D_A - D_B).
struct TransversalityCertificate {
    UniformTangentSetCandidate d_a, d_b;
    Rat rho_squared;
    std::vector<Halfspace> difference_hull;
};

struct NotCertified {
    std::string reason;
    std::optional<Halfspace> witness;  // separating halfspace through 0
};

using StrongTransversalityResult = std::variant<TransversalityCertificate, NotCertified>;

StrongTransversalityResult strong_transversality(const UniformTangentSetCandidate& d_a,
                                                 const UniformTangentSetCandidate& d_b);

/// Raised by witness_search when no realizing points exist at the
/// certified parameters (a defective certificate).
class NoWitness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One step of the tangential-transversality construction: directions
/// w_a, w_b bounded by M and a step size t along which the distance
/// between the realized points drops by at least t * eta, eta = 1-3eps,
/// all verified in exact squared form.
struct WitnessRecord {
    Vec x_a, x_b;
    Rat t;
    Vec w_a, w_b;
    Rat decrease;  // certified lower bound t * eta on the actual decrease
    Rat M, eta;
};

WitnessRecord witness_search(const TransversalityCertificate& cert, const Vec& x_a,
                             const Vec& x_b, const Rat& epsilon);

/// Certifies d_common (⊆ D_A ∩ D_B, LP-checked) as a uniform tangent
/// set of the intersection of the hosts.
PropertyReport uts_intersection_check(const TransversalityCertificate& cert,
                                      const std::vector<Vec>& d_common);

/// Is x in the convex hull of the given points?  (LP feasibility.)
bool in_convex_hull(const std::vector<Vec>& points, const Vec& x);

} // namespace conelab
