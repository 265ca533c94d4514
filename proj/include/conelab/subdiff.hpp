#pragma once

#include "conelab/pwa.hpp"
#include "conelab/uts.hpp"

namespace conelab {

/// Clarke subdifferential at a point: the convex hull of `polytope`
/// plus the singular cone (which also equals the recession cone of the
/// subdifferential, so unbounded subdifferentials need no special case).
struct SubdifferentialSet {
    std::vector<Vec> polytope;     // vertices of the bounded part
    PolyhedralCone singular_cone;  // the singular subdifferential

    bool contains(const Vec& s) const;
};

/// Builds the epigraph as a locally conical union of cones at
/// (x0, f(x0)), takes its Clarke normal cone N, and slices:
/// the subdifferential is {x* : (x*, -1) in N}, the singular
/// subdifferential {x* : (x*, 0) in N}.
SubdifferentialSet clarke_subdifferential(const PWAFunction& f, const Vec& x0);
SubdifferentialSet clarke_subdifferential(const std::vector<AffineRegion>& regions,
                                          const Vec& x0);

/// Qualification: the singular subdifferentials meet only at 0.
struct QualificationReport {
    bool holds = false;
    PolyhedralCone singular_1, singular_2;
    PolyhedralCone meet;  // singular_1 ∩ (-singular_2)
};

QualificationReport singular_qualification(const PWAFunction& f1, const PWAFunction& f2,
                                           const Vec& x0);

/// The two epigraphs lifted into dimension n+2 with coordinates
/// (x, r1, r2): c1 = {r1 >= f1(x)} with r2 free, c2 = {r2 >= f2(x)}
/// with r1 free, both locally conical at (x0, f1(x0), f2(x0)).
struct EpigraphLift {
    UnionSet c1, c2;
    Vec basepoint;
};

EpigraphLift epigraph_lift(const PWAFunction& f1, const PWAFunction& f2, const Vec& x0);

/// Sum rule: the subdifferential of f1 + f2 sits inside the sum of the
/// subdifferentials, vertex by vertex.  Hypotheses (transversality of
/// the lifted Clarke cones and strong tangential transversality of the
/// lifted epigraphs) are certified, not assumed; when they hold every
/// vertex must decompose.
struct SumRuleReport {
    struct Entry {
        Vec vertex;
        bool decomposes = false;
        Vec s1, s2;  // valid when decomposes
    };
    bool hypothesis_cone_transversal = false;
    bool hypothesis_strong = false;
    SubdifferentialSet sum, part_1, part_2;
    std::vector<Entry> entries;
    bool all_decompose = false;
};

SumRuleReport sum_rule_check(const PWAFunction& f1, const PWAFunction& f2, const Vec& x0);

/// The two structural facts behind the sum rule, on the lifted sets
/// with C = {(x, r1, r2) : r1 + r2 >= (f1+f2)(x)}:
///   (1) the Clarke cone of c1 ∩ c2 sits inside the Clarke cone of C;
///   (2) the normal cone of C consists exactly of the triples
///       (x*, s, s) with (x*, s) normal to the epigraph of f1 + f2.
PropertyReport intermediate_inclusion_check(const PWAFunction& f1, const PWAFunction& f2,
                                            const Vec& x0);

} // namespace conelab
