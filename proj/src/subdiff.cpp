#include "conelab/subdiff.hpp"

#include <utility>

namespace conelab {

namespace {

// {x* : (x*, t) in N} for a fixed last coordinate t
Polyhedron slice_at(const PolyhedralCone& n_cone, const Rat& t) {
    const std::size_t n = n_cone.dim() - 1;
    std::vector<Halfspace> facets, equations;
    for (const Vec& a : n_cone.facet_normals()) {
        facets.push_back({Vec(a.begin(), a.end() - 1), -t * a.back()});
    }
    for (const Vec& a : n_cone.equality_normals()) {
        equations.push_back({Vec(a.begin(), a.end() - 1), -t * a.back()});
    }
    return Polyhedron::from_halfspaces(n, facets, equations);
}

PolyhedralCone singular_slice(const PolyhedralCone& n_cone) {
    const std::size_t n = n_cone.dim() - 1;
    std::vector<Vec> normals;
    for (const Halfspace& h : n_cone.halfspaces()) {
        normals.emplace_back(h.normal.begin(), h.normal.end() - 1);
    }
    return PolyhedralCone::from_halfspace_normals(n, std::move(normals));
}

// feasibility of target = sum of one convex combination per polytope
// plus one conic combination per cone; returns the per-set parts
std::optional<std::pair<Vec, Vec>> split_between(const SubdifferentialSet& a,
                                                 const SubdifferentialSet& b,
                                                 const Vec& target) {
    if (a.polytope.empty() || b.polytope.empty()) return std::nullopt;
    const std::size_t n = target.size();
    std::vector<Vec> ga = a.singular_cone.generators();
    std::vector<Vec> gb = b.singular_cone.generators();
    const std::size_t ka = a.polytope.size(), ma = ga.size();
    const std::size_t kb = b.polytope.size(), mb = gb.size();
    const std::size_t m = ka + ma + kb + mb;

    std::vector<Halfspace> cons, eqs;
    for (std::size_t i = 0; i < m; ++i) {
        Vec row = zero_vec(m);
        row[i] = Rat(-1);
        cons.push_back({std::move(row), Rat(0)});
    }
    auto weight_row = [&](std::size_t begin, std::size_t count) {
        Vec row = zero_vec(m);
        for (std::size_t i = 0; i < count; ++i) row[begin + i] = Rat(1);
        eqs.push_back({std::move(row), Rat(1)});
    };
    weight_row(0, ka);
    weight_row(ka + ma, kb);
    for (std::size_t c = 0; c < n; ++c) {
        Vec row(m);
        for (std::size_t i = 0; i < ka; ++i) row[i] = a.polytope[i][c];
        for (std::size_t i = 0; i < ma; ++i) row[ka + i] = ga[i][c];
        for (std::size_t i = 0; i < kb; ++i) row[ka + ma + i] = b.polytope[i][c];
        for (std::size_t i = 0; i < mb; ++i) row[ka + ma + kb + i] = gb[i][c];
        eqs.push_back({std::move(row), target[c]});
    }
    std::optional<Vec> sol = lp_feasible_point(cons, eqs);
    if (!sol) return std::nullopt;
    Vec s1 = zero_vec(n);
    for (std::size_t i = 0; i < ka; ++i) s1 = add(s1, scale((*sol)[i], a.polytope[i]));
    for (std::size_t i = 0; i < ma; ++i) s1 = add(s1, scale((*sol)[ka + i], ga[i]));
    return std::make_pair(std::move(s1), sub(target, s1));
}

// the epigraph piece lifted into (x, r1, r2): the epigraph coordinate
// goes to slot `pos`, the other r-coordinate is left free
PolyhedralCone lift_piece(const PolyhedralCone& c, std::size_t pos) {
    const std::size_t n = c.dim() - 1;
    std::vector<Vec> normals;
    for (const Halfspace& h : c.halfspaces()) {
        Vec a = zero_vec(n + 2);
        for (std::size_t i = 0; i < n; ++i) a[i] = h.normal[i];
        a[pos] = h.normal[n];
        normals.push_back(std::move(a));
    }
    return PolyhedralCone::from_halfspace_normals(n + 2, std::move(normals));
}

UnionSet lift_union(const UnionSet& epi, std::size_t pos, Vec basepoint) {
    std::vector<PolyhedralCone> pieces;
    for (const PolyhedralCone& c : epi.pieces) pieces.push_back(lift_piece(c, pos));
    return UnionSet::make(std::move(pieces), std::move(basepoint));
}

// C = {(x, r1, r2) : r1 + r2 >= f(x)} locally conified: the normal
// (a_x, a_r) of every epigraph constraint becomes (a_x, a_r, a_r)
UnionSet symmetric_lift(const UnionSet& epi_sum, Vec basepoint) {
    const std::size_t n = epi_sum.dim() - 1;
    std::vector<PolyhedralCone> pieces;
    for (const PolyhedralCone& c : epi_sum.pieces) {
        std::vector<Vec> normals;
        for (const Halfspace& h : c.halfspaces()) {
            Vec a = h.normal;
            a.push_back(h.normal[n]);
            normals.push_back(std::move(a));
        }
        pieces.push_back(PolyhedralCone::from_halfspace_normals(n + 2, std::move(normals)));
    }
    return UnionSet::make(std::move(pieces), std::move(basepoint));
}

// truncated Clarke cone as the canonical uniform-tangent-set candidate
UniformTangentSetCandidate clarke_candidate(const UnionSet& host, const PolyhedralCone& t) {
    Polyhedron trunc =
        intersect(cone_as_polyhedron(t), Polyhedron::cross_polytope(host.dim(), Rat(1)));
    return certify_uts(host, trunc.vertices(), {{Rat(1, 8), Rat(1), Rat(1, 2), 40, 23}});
}

} // namespace

bool SubdifferentialSet::contains(const Vec& s) const {
    if (polytope.empty()) return false;
    SubdifferentialSet zero{{zero_vec(s.size())}, PolyhedralCone::zero(s.size())};
    return split_between(*this, zero, s).has_value();
}

SubdifferentialSet clarke_subdifferential(const std::vector<AffineRegion>& regions,
                                          const Vec& x0) {
    UnionSet epi = epigraph_at(regions, x0);
    PolyhedralCone n_cone = clarke_normal_cone(epi);
    SubdifferentialSet out;
    out.polytope = slice_at(n_cone, Rat(-1)).vertices();
    out.singular_cone = singular_slice(n_cone);
    return out;
}

SubdifferentialSet clarke_subdifferential(const PWAFunction& f, const Vec& x0) {
    if (!f.in_domain(x0)) throw PointOutsideDomain("clarke_subdifferential: point outside domain");
    return clarke_subdifferential(affine_regions(f), x0);
}

QualificationReport singular_qualification(const PWAFunction& f1, const PWAFunction& f2,
                                           const Vec& x0) {
    QualificationReport rep;
    rep.singular_1 = clarke_subdifferential(f1, x0).singular_cone;
    rep.singular_2 = clarke_subdifferential(f2, x0).singular_cone;
    rep.meet = intersect(rep.singular_1, rep.singular_2.negate());
    rep.holds = rep.meet.is_zero_cone();
    return rep;
}

EpigraphLift epigraph_lift(const PWAFunction& f1, const PWAFunction& f2, const Vec& x0) {
    UnionSet e1 = epigraph_at(f1, x0);
    UnionSet e2 = epigraph_at(f2, x0);
    const std::size_t n = x0.size();
    Vec basepoint = x0;
    basepoint.push_back(e1.basepoint[n]);  // f1(x0)
    basepoint.push_back(e2.basepoint[n]);  // f2(x0)
    EpigraphLift lift;
    lift.c1 = lift_union(e1, n, basepoint);
    lift.c2 = lift_union(e2, n + 1, basepoint);
    lift.basepoint = std::move(basepoint);
    return lift;
}

SumRuleReport sum_rule_check(const PWAFunction& f1, const PWAFunction& f2, const Vec& x0) {
    SumRuleReport rep;
    EpigraphLift lift = epigraph_lift(f1, f2, x0);

    PolyhedralCone t1 = clarke_tangent_cone(lift.c1);
    PolyhedralCone t2 = clarke_tangent_cone(lift.c2);
    rep.hypothesis_cone_transversal = transversality_radius(t1, t2).transversal;

    UniformTangentSetCandidate d1 = clarke_candidate(lift.c1, t1);
    UniformTangentSetCandidate d2 = clarke_candidate(lift.c2, t2);
    StrongTransversalityResult strong = strong_transversality(d1, d2);
    rep.hypothesis_strong = d1.certified() && d2.certified() &&
                            std::holds_alternative<TransversalityCertificate>(strong);

    rep.sum = clarke_subdifferential(sum_regions(f1, f2), x0);
    rep.part_1 = clarke_subdifferential(f1, x0);
    rep.part_2 = clarke_subdifferential(f2, x0);

    rep.all_decompose = true;
    for (const Vec& v : rep.sum.polytope) {
        SumRuleReport::Entry e;
        e.vertex = v;
        if (auto parts = split_between(rep.part_1, rep.part_2, v)) {
            e.decomposes = true;
            e.s1 = std::move(parts->first);
            e.s2 = std::move(parts->second);
        } else {
            rep.all_decompose = false;
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

PropertyReport intermediate_inclusion_check(const PWAFunction& f1, const PWAFunction& f2,
                                            const Vec& x0) {
    const std::size_t n = x0.size();
    EpigraphLift lift = epigraph_lift(f1, f2, x0);
    UnionSet epi_sum = epigraph_at(sum_regions(f1, f2), x0);
    UnionSet c = symmetric_lift(epi_sum, lift.basepoint);

    PropertyReport rep;

    PolyhedralCone t_meet = clarke_tangent_cone(intersect(lift.c1, lift.c2));
    PolyhedralCone t_c = clarke_tangent_cone(c);
    rep.items.push_back({"tangent cone of the meet sits in the lifted sum cone",
                         t_c.contains(t_meet)});

    PolyhedralCone n_c = clarke_normal_cone(c);
    PolyhedralCone n_sum = clarke_normal_cone(epi_sum);
    bool symmetric = true;
    for (const Vec& g : n_c.generators()) {
        symmetric = symmetric && g[n] == g[n + 1];
        if (symmetric) symmetric = n_sum.contains(Vec(g.begin(), g.end() - 1));
    }
    for (const Vec& g : n_sum.generators()) {
        Vec h = g;
        h.push_back(g.back());
        symmetric = symmetric && n_c.contains(h);
    }
    rep.items.push_back({"normal cone of the lifted sum is the symmetric slice", symmetric});
    return rep;
}

} // namespace conelab
