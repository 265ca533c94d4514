#include "conelab/pwa.hpp"

#include <utility>

namespace conelab {

namespace {

void validate(std::size_t n, const std::vector<AffinePiece>& pieces,
              const std::optional<Polyhedron>& domain) {
    if (pieces.empty()) throw InputError("PWAFunction: at least one affine piece is required");
    for (const AffinePiece& p : pieces) {
        if (p.gradient.size() != n) throw InputError("PWAFunction: gradient dimension mismatch");
    }
    if (domain) {
        if (domain->dim() != n) throw InputError("PWAFunction: domain dimension mismatch");
        if (domain->is_empty()) throw InputError("PWAFunction: empty domain (improper function)");
    }
}

Rat inner_max(const std::vector<AffinePiece>& pieces, const Vec& x) {
    Rat best = dot(pieces[0].gradient, x) + pieces[0].offset;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        Rat v = dot(pieces[i].gradient, x) + pieces[i].offset;
        if (v > best) best = v;
    }
    return best;
}

} // namespace

PWAFunction PWAFunction::max_of(std::size_t n, std::vector<AffinePiece> pieces,
                                std::optional<Polyhedron> domain) {
    validate(n, pieces, domain);
    PWAFunction f;
    f.dim_ = n;
    f.kind_ = Kind::Max;
    f.pieces_ = std::move(pieces);
    f.domain_ = std::move(domain);
    return f;
}

PWAFunction PWAFunction::neg_max_of(std::size_t n, std::vector<AffinePiece> pieces,
                                    std::optional<Polyhedron> domain) {
    PWAFunction f = max_of(n, std::move(pieces), std::move(domain));
    f.kind_ = Kind::NegMax;
    return f;
}

bool PWAFunction::in_domain(const Vec& x) const {
    if (x.size() != dim_) throw InputError("PWAFunction: point dimension mismatch");
    return !domain_ || domain_->contains(x);
}

Rat PWAFunction::value(const Vec& x) const {
    if (!in_domain(x)) throw PointOutsideDomain("PWAFunction: point outside the domain");
    Rat m = inner_max(pieces_, x);
    return kind_ == Kind::Max ? m : Rat(-m);
}

PWAFunction PWAFunction::scaled(const Rat& c) const {
    if (c <= 0) throw InputError("PWAFunction::scaled: the factor must be positive");
    PWAFunction f = *this;
    for (AffinePiece& p : f.pieces_) {
        p.gradient = scale(c, p.gradient);
        p.offset *= c;
    }
    return f;
}

std::vector<AffineRegion> affine_regions(const PWAFunction& f) {
    const std::size_t n = f.dim();
    const std::vector<AffinePiece>& pieces = f.pieces();
    std::vector<Halfspace> domain_facets, domain_equations;
    if (f.domain()) {
        FacetDescription fd = f.domain()->facet_description();
        domain_facets = fd.facets;
        domain_equations = fd.equations;
    }
    std::vector<AffineRegion> out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        // region where piece i attains the inner max: <g_j - g_i, x> <= b_i - b_j
        std::vector<Halfspace> facets = domain_facets;
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            if (j == i) continue;
            facets.push_back({sub(pieces[j].gradient, pieces[i].gradient),
                              pieces[i].offset - pieces[j].offset});
        }
        Polyhedron region = Polyhedron::from_halfspaces(n, facets, domain_equations);
        if (region.is_empty()) continue;
        Vec g = pieces[i].gradient;
        Rat b = pieces[i].offset;
        if (f.kind() == PWAFunction::Kind::NegMax) {
            g = neg(g);
            b = -b;
        }
        out.push_back({std::move(region), std::move(g), std::move(b)});
    }
    return out;
}

std::vector<AffineRegion> sum_regions(const PWAFunction& f1, const PWAFunction& f2) {
    if (f1.dim() != f2.dim()) throw InputError("sum_regions: dimension mismatch");
    std::vector<AffineRegion> out;
    for (const AffineRegion& a : affine_regions(f1)) {
        for (const AffineRegion& b : affine_regions(f2)) {
            Polyhedron region = intersect(a.region, b.region);
            if (region.is_empty()) continue;
            out.push_back({std::move(region), add(a.gradient, b.gradient), a.offset + b.offset});
        }
    }
    return out;
}

Rat region_value(const std::vector<AffineRegion>& regions, const Vec& x) {
    for (const AffineRegion& r : regions) {
        if (r.region.contains(x)) return dot(r.gradient, x) + r.offset;
    }
    throw PointOutsideDomain("region_value: point outside the domain");
}

PolyhedralCone polyhedron_tangent_cone(const Polyhedron& p, const Vec& y) {
    if (!p.contains(y)) throw InputError("polyhedron_tangent_cone: point outside the polyhedron");
    FacetDescription fd = p.facet_description();
    std::vector<Vec> normals;
    for (const Halfspace& h : fd.facets) {
        if (dot(h.normal, y) == h.offset) normals.push_back(h.normal);
    }
    for (const Halfspace& h : fd.equations) {
        normals.push_back(h.normal);
        normals.push_back(neg(h.normal));
    }
    return PolyhedralCone::from_halfspace_normals(p.dim(), std::move(normals));
}

UnionSet epigraph_at(const std::vector<AffineRegion>& regions, const Vec& x0) {
    if (regions.empty()) throw InputError("epigraph_at: no regions");
    const std::size_t n = x0.size();
    const Rat fx0 = region_value(regions, x0);

    std::vector<PolyhedralCone> cones;
    for (const AffineRegion& r : regions) {
        if (!r.region.contains(x0)) continue;
        if (dot(r.gradient, x0) + r.offset != fx0)
            throw InputError("epigraph_at: regions disagree at the basepoint");
        // the epigraph piece {(x, r) : x in region, r >= <g, x> + b};
        // every constraint active at (x0, f(x0)) lifts into the tangent
        // cone, and the graph constraint is always active there
        PolyhedralCone base = polyhedron_tangent_cone(r.region, x0);
        std::vector<Vec> normals;
        for (const Halfspace& h : base.halfspaces()) {
            Vec a = h.normal;
            a.push_back(Rat(0));
            normals.push_back(std::move(a));
        }
        Vec graph = r.gradient;
        graph.push_back(Rat(-1));
        normals.push_back(std::move(graph));
        PolyhedralCone piece = PolyhedralCone::from_halfspace_normals(n + 1, std::move(normals));
        bool seen = false;
        for (const PolyhedralCone& c : cones) seen = seen || c == piece;
        if (!seen) cones.push_back(std::move(piece));
    }

    Vec basepoint = x0;
    basepoint.push_back(fx0);
    return UnionSet::make(std::move(cones), std::move(basepoint));
}

UnionSet epigraph_at(const PWAFunction& f, const Vec& x0) {
    if (!f.in_domain(x0)) throw PointOutsideDomain("epigraph_at: point outside the domain");
    return epigraph_at(affine_regions(f), x0);
}

} // namespace conelab
