#include "conelab/cone_ops.hpp"

#include <algorithm>

namespace conelab {

Polyhedron cone_as_polyhedron(const PolyhedralCone& c) {
    return Polyhedron::from_generators(c.dim(), {zero_vec(c.dim())}, c.rays(), c.lines());
}

Rat inscribed_ball_radius_sq(const Polyhedron& p) {
    FacetDescription fd = p.facet_description();
    if (!fd.equations.empty()) return Rat(0);
    bool first = true;
    Rat best = 0;
    for (const Halfspace& h : fd.facets) {
        if (h.offset <= 0) return Rat(0);
        Rat r = h.offset * h.offset / norm_sq(h.normal);
        if (first || r < best) best = r;
        first = false;
    }
    return best;  // no facets: whole space, radius unbounded; callers guard
}

SandwichReport verify_polar_sandwich(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim() != b.dim()) throw InputError("verify_polar_sandwich: dimension mismatch");
    if (!a.is_bounded() || !b.is_bounded())
        throw InputError("verify_polar_sandwich: inputs must be bounded polytopes");
    const Vec origin = zero_vec(a.dim());
    if (!a.contains(origin) || !b.contains(origin))
        throw OriginMissing("verify_polar_sandwich: an input does not contain the origin");

    const Polyhedron ap = a.polar(), bp = b.polar();
    const Polyhedron sum_polar = minkowski_sum(a, b).polar();
    const Polyhedron meet_of_polars = intersect(ap, bp);
    const Polyhedron meet_polar = intersect(a, b).polar();
    const Polyhedron sum_of_polars = minkowski_sum(ap, bp);  // closed: polyhedral

    SandwichReport r;
    r.sum_polar_in_meet_of_polars = meet_of_polars.contains(sum_polar);
    r.meet_of_polars_in_two_sum_polar = sum_polar.scaled(Rat(2)).contains(meet_of_polars);
    r.meet_polar_in_sum_of_polars = sum_of_polars.contains(meet_polar);
    r.sum_of_polars_in_two_meet_polar = meet_polar.scaled(Rat(2)).contains(sum_of_polars);
    return r;
}

namespace {

// Deterministic separating-halfspace witness: among all facet/equation
// normals of d that vanish at 0 or cut it off, the lexicographically
// smallest primitive normal.
Halfspace separating_witness(const Polyhedron& d) {
    FacetDescription fd = d.facet_description();
    std::vector<Vec> candidates;
    for (const Halfspace& h : fd.facets) {
        if (h.offset <= 0) candidates.push_back(primitive(h.normal, false));
    }
    for (const Halfspace& e : fd.equations) {
        candidates.push_back(primitive(e.normal, false));
        candidates.push_back(primitive(neg(e.normal), false));
    }
    if (candidates.empty()) throw InputError("no separating witness exists");
    std::sort(candidates.begin(), candidates.end(), lex_less);
    return {candidates.front(), Rat(0)};
}

struct Bracket {
    bool positive;
    Rat inner_sq, outer_sq;
    Polyhedron outer;
};

Bracket radius_bracket(const PolyhedralCone& c1, const PolyhedralCone& c2, bool difference) {
    const std::size_t n = c1.dim();
    const Polyhedron p1 = cone_as_polyhedron(c1);
    const Polyhedron p2raw = cone_as_polyhedron(c2);
    const Polyhedron p2 = difference ? p2raw.negated() : p2raw;

    auto truncated_sum = [&](const Polyhedron& ball) {
        return minkowski_sum(intersect(p1, ball), intersect(p2, ball));
    };
    const Polyhedron inner = truncated_sum(Polyhedron::cross_polytope(n, Rat(1)));
    Polyhedron outer = truncated_sum(Polyhedron::box(n, Rat(1)));

    Bracket b{false, inscribed_ball_radius_sq(inner), inscribed_ball_radius_sq(outer),
              std::move(outer)};
    b.positive = b.inner_sq > 0;
    return b;
}

} // namespace

TransversalityRadiusResult transversality_radius(const PolyhedralCone& c1,
                                                 const PolyhedralCone& c2) {
    if (c1.dim() != c2.dim()) throw InputError("transversality_radius: dimension mismatch");

    TransversalityRadiusResult r;
    Bracket diff = radius_bracket(c1, c2, /*difference=*/true);
    Bracket plus = radius_bracket(c1, c2, /*difference=*/false);

    r.transversal = diff.positive;
    r.rho_sq_inner = diff.inner_sq;
    r.rho_sq_outer = diff.outer_sq;
    r.plus_transversal = plus.positive;
    r.rho_plus_sq_inner = plus.inner_sq;
    r.rho_plus_sq_outer = plus.outer_sq;
    if (!r.transversal) r.witness = separating_witness(diff.outer);
    return r;
}

} // namespace conelab
