#include "conelab/cone.hpp"

namespace conelab {

namespace {

std::vector<Vec> expand(const std::vector<Vec>& rays, const std::vector<Vec>& lines) {
    std::vector<Vec> out = rays;
    for (const Vec& l : lines) {
        out.push_back(l);
        out.push_back(neg(l));
    }
    return out;
}

} // namespace

PolyhedralCone PolyhedralCone::from_halfspace_normals(std::size_t n, std::vector<Vec> normals) {
    PolyhedralCone c;
    c.dim_ = n;
    ConeGenerators g = dual_rays(normals, n);
    c.rays_ = g.rays;
    c.lines_ = g.lines;
    ConeGenerators h = dual_rays(expand(c.rays_, c.lines_), n);
    c.ineq_ = h.rays;
    c.eq_ = h.lines;
    return c;
}

PolyhedralCone PolyhedralCone::from_halfspaces(std::size_t n, const std::vector<Halfspace>& hs) {
    std::vector<Vec> normals;
    for (const Halfspace& h : hs) {
        if (h.offset != 0) throw InputError("PolyhedralCone: inhomogeneous halfspace");
        if (h.normal.size() != n) throw InputError("PolyhedralCone: dimension mismatch");
        normals.push_back(h.normal);
    }
    return from_halfspace_normals(n, std::move(normals));
}

PolyhedralCone PolyhedralCone::from_generators(std::size_t n, const std::vector<Vec>& gens) {
    for (const Vec& g : gens) {
        if (g.size() != n) throw InputError("PolyhedralCone: generator dimension mismatch");
    }
    PolyhedralCone c;
    c.dim_ = n;
    ConeGenerators h = dual_rays(gens, n);
    c.ineq_ = h.rays;
    c.eq_ = h.lines;
    ConeGenerators g = dual_rays(expand(c.ineq_, c.eq_), n);
    c.rays_ = g.rays;
    c.lines_ = g.lines;
    return c;
}

PolyhedralCone PolyhedralCone::full_space(std::size_t n) {
    return from_halfspace_normals(n, {});
}

PolyhedralCone PolyhedralCone::zero(std::size_t n) {
    std::vector<Vec> normals;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e = zero_vec(n);
        e[i] = 1;
        normals.push_back(e);
        normals.push_back(neg(e));
    }
    return from_halfspace_normals(n, std::move(normals));
}

PolyhedralCone PolyhedralCone::nonnegative_orthant(std::size_t n) {
    std::vector<Vec> normals;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e = zero_vec(n);
        e[i] = -1;
        normals.push_back(e);
    }
    return from_halfspace_normals(n, std::move(normals));
}

PolyhedralCone PolyhedralCone::ray(const Vec& v) {
    return from_generators(v.size(), {v});
}

std::vector<Vec> PolyhedralCone::generators() const { return expand(rays_, lines_); }

std::vector<Halfspace> PolyhedralCone::halfspaces() const {
    std::vector<Halfspace> out;
    for (const Vec& a : ineq_) out.push_back({a, Rat(0)});
    for (const Vec& a : eq_) {
        out.push_back({a, Rat(0)});
        out.push_back({neg(a), Rat(0)});
    }
    return out;
}

bool PolyhedralCone::contains(const Vec& x) const {
    if (x.size() != dim_) throw InputError("cone contains: dimension mismatch");
    for (const Vec& a : ineq_) {
        if (dot(a, x) > 0) return false;
    }
    for (const Vec& a : eq_) {
        if (dot(a, x) != 0) return false;
    }
    return true;
}

bool PolyhedralCone::contains(const PolyhedralCone& other) const {
    for (const Vec& g : other.generators()) {
        if (!contains(g)) return false;
    }
    return true;
}

bool PolyhedralCone::operator==(const PolyhedralCone& o) const {
    return dim_ == o.dim_ && rays_ == o.rays_ && lines_ == o.lines_;
}

std::size_t PolyhedralCone::span_dim() const {
    Mat m = expand(rays_, lines_);
    return rank(m);
}

PolyhedralCone PolyhedralCone::negate() const {
    std::vector<Vec> gens;
    for (const Vec& g : generators()) gens.push_back(neg(g));
    return from_generators(dim_, gens);
}

PolyhedralCone polar(const PolyhedralCone& c) {
    // Generators of the input become facet normals of the output.
    return PolyhedralCone::from_halfspace_normals(c.dim(), c.generators());
}

PolyhedralCone minkowski_sum(const PolyhedralCone& a, const PolyhedralCone& b) {
    if (a.dim() != b.dim()) throw InputError("minkowski_sum: dimension mismatch");
    std::vector<Vec> gens = a.generators();
    for (const Vec& g : b.generators()) gens.push_back(g);
    return PolyhedralCone::from_generators(a.dim(), gens);
}

PolyhedralCone intersect(const PolyhedralCone& a, const PolyhedralCone& b) {
    if (a.dim() != b.dim()) throw InputError("intersect: dimension mismatch");
    std::vector<Vec> normals;
    for (const Halfspace& h : a.halfspaces()) normals.push_back(h.normal);
    for (const Halfspace& h : b.halfspaces()) normals.push_back(h.normal);
    return PolyhedralCone::from_halfspace_normals(a.dim(), normals);
}

PolyhedralCone tangent_cone_at(const PolyhedralCone& c, const Vec& y) {
    if (!c.contains(y)) throw InputError("tangent_cone_at: point not in cone");
    std::vector<Vec> normals;
    for (const Vec& a : c.facet_normals()) {
        if (dot(a, y) == 0) normals.push_back(a);
    }
    for (const Vec& a : c.equality_normals()) {
        normals.push_back(a);
        normals.push_back(neg(a));
    }
    return PolyhedralCone::from_halfspace_normals(c.dim(), normals);
}

} // namespace conelab
