#include "conelab/polyhedron.hpp"

namespace conelab {

namespace {

Vec lift(const Vec& x, const Rat& last) {
    Vec v = x;
    v.push_back(last);
    return v;
}

Vec drop_last(const Vec& v) { return Vec(v.begin(), v.end() - 1); }

} // namespace

Polyhedron Polyhedron::from_generators(std::size_t n, const std::vector<Vec>& points,
                                       const std::vector<Vec>& rays,
                                       const std::vector<Vec>& lines) {
    std::vector<Vec> gens;
    for (const Vec& p : points) gens.push_back(lift(p, Rat(1)));
    for (const Vec& r : rays) gens.push_back(lift(r, Rat(0)));
    for (const Vec& l : lines) {
        gens.push_back(lift(l, Rat(0)));
        gens.push_back(lift(neg(l), Rat(0)));
    }
    Polyhedron p;
    p.dim_ = n;
    p.cone_ = PolyhedralCone::from_generators(n + 1, gens);
    return p;
}

Polyhedron Polyhedron::from_points(std::size_t n, const std::vector<Vec>& points) {
    return from_generators(n, points, {}, {});
}

Polyhedron Polyhedron::from_halfspaces(std::size_t n, const std::vector<Halfspace>& facets,
                                       const std::vector<Halfspace>& equations) {
    std::vector<Vec> normals;
    for (const Halfspace& h : facets) {
        if (h.normal.size() != n) throw InputError("Polyhedron: facet dimension mismatch");
        normals.push_back(lift(h.normal, -h.offset));
    }
    for (const Halfspace& e : equations) {
        if (e.normal.size() != n) throw InputError("Polyhedron: equation dimension mismatch");
        normals.push_back(lift(e.normal, -e.offset));
        normals.push_back(neg(lift(e.normal, -e.offset)));
    }
    Vec tneg = zero_vec(n + 1);
    tneg[n] = -1;
    normals.push_back(tneg);  // homogenizing coordinate >= 0
    Polyhedron p;
    p.dim_ = n;
    p.cone_ = PolyhedralCone::from_halfspace_normals(n + 1, normals);
    return p;
}

Polyhedron Polyhedron::from_homogenization(std::size_t n, PolyhedralCone c) {
    if (c.dim() != n + 1) throw InputError("from_homogenization: dimension mismatch");
    Polyhedron p;
    p.dim_ = n;
    p.cone_ = std::move(c);
    return p;
}

Polyhedron Polyhedron::cross_polytope(std::size_t n, const Rat& radius) {
    std::vector<Halfspace> facets;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        Vec a(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = (mask >> i) & 1 ? Rat(1) : Rat(-1);
        facets.push_back({a, radius});
    }
    return from_halfspaces(n, facets);
}

Polyhedron Polyhedron::box(std::size_t n, const Rat& radius) {
    std::vector<Halfspace> facets;
    for (std::size_t i = 0; i < n; ++i) {
        Vec e = zero_vec(n);
        e[i] = 1;
        facets.push_back({e, radius});
        facets.push_back({neg(e), radius});
    }
    return from_halfspaces(n, facets);
}

Polyhedron Polyhedron::singleton(const Vec& p) { return from_points(p.size(), {p}); }

bool Polyhedron::is_empty() const { return vertices().empty(); }

bool Polyhedron::is_bounded() const {
    return recession_rays().empty() && recession_lines().empty();
}

std::vector<Vec> Polyhedron::vertices() const {
    std::vector<Vec> out;
    for (const Vec& r : cone_.rays()) {
        const Rat& t = r[dim_];
        if (t > 0) out.push_back(drop_last(scale(Rat(1) / t, r)));
    }
    return out;
}

std::vector<Vec> Polyhedron::recession_rays() const {
    std::vector<Vec> out;
    for (const Vec& r : cone_.rays()) {
        if (r[dim_] == 0) out.push_back(drop_last(r));
    }
    return out;
}

std::vector<Vec> Polyhedron::recession_lines() const {
    std::vector<Vec> out;
    for (const Vec& l : cone_.lines()) out.push_back(drop_last(l));
    return out;
}

FacetDescription Polyhedron::facet_description() const {
    FacetDescription fd;
    for (const Vec& a : cone_.facet_normals()) {
        Vec head = drop_last(a);
        if (is_zero(head)) continue;  // the homogenizing facet t >= 0
        fd.facets.push_back({head, -a[dim_]});
    }
    for (const Vec& a : cone_.equality_normals()) {
        Vec head = drop_last(a);
        if (is_zero(head)) continue;  // t = 0: empty polyhedron
        fd.equations.push_back({head, -a[dim_]});
    }
    return fd;
}

bool Polyhedron::contains(const Vec& x) const {
    if (x.size() != dim_) throw InputError("Polyhedron contains: dimension mismatch");
    return cone_.contains(lift(x, Rat(1)));
}

bool Polyhedron::contains(const Polyhedron& other) const {
    if (other.is_empty()) return true;
    return cone_.contains(other.cone_);
}

bool Polyhedron::operator==(const Polyhedron& o) const {
    return dim_ == o.dim_ && cone_ == o.cone_;
}

Polyhedron Polyhedron::scaled(const Rat& c) const {
    if (c == 0) throw InputError("Polyhedron::scaled: zero factor");
    std::vector<Vec> pts, rays;
    for (const Vec& v : vertices()) pts.push_back(scale(c, v));
    for (const Vec& r : recession_rays()) rays.push_back(scale(c, r));
    return from_generators(dim_, pts, rays, recession_lines());
}

Polyhedron Polyhedron::translated(const Vec& t) const {
    std::vector<Vec> pts;
    for (const Vec& v : vertices()) pts.push_back(add(v, t));
    return from_generators(dim_, pts, recession_rays(), recession_lines());
}

Polyhedron Polyhedron::polar() const {
    if (is_empty()) {
        // polar of the empty set is the whole space
        return from_generators(dim_, {zero_vec(dim_)}, {}, kernel_basis({}, dim_));
    }
    std::vector<Vec> normals;
    for (const Vec& v : vertices()) normals.push_back(lift(v, Rat(-1)));
    for (const Vec& r : recession_rays()) normals.push_back(lift(r, Rat(0)));
    for (const Vec& l : recession_lines()) {
        normals.push_back(lift(l, Rat(0)));
        normals.push_back(lift(neg(l), Rat(0)));
    }
    Vec tneg = zero_vec(dim_ + 1);
    tneg[dim_] = -1;
    normals.push_back(tneg);
    Polyhedron p;
    p.dim_ = dim_;
    p.cone_ = PolyhedralCone::from_halfspace_normals(dim_ + 1, normals);
    return p;
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim() != b.dim()) throw InputError("Polyhedron intersect: dimension mismatch");
    std::vector<Vec> normals;
    for (const Halfspace& h : a.homogenization().halfspaces()) normals.push_back(h.normal);
    for (const Halfspace& h : b.homogenization().halfspaces()) normals.push_back(h.normal);
    return Polyhedron::from_homogenization(
        a.dim(), PolyhedralCone::from_halfspace_normals(a.dim() + 1, normals));
}

Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b) {
    if (a.dim() != b.dim()) throw InputError("Polyhedron sum: dimension mismatch");
    if (a.is_empty() || b.is_empty()) return Polyhedron::from_points(a.dim(), {});
    std::vector<Vec> pts;
    for (const Vec& u : a.vertices()) {
        for (const Vec& v : b.vertices()) pts.push_back(add(u, v));
    }
    std::vector<Vec> rays = a.recession_rays(), lines = a.recession_lines();
    for (const Vec& r : b.recession_rays()) rays.push_back(r);
    for (const Vec& l : b.recession_lines()) lines.push_back(l);
    return Polyhedron::from_generators(a.dim(), pts, rays, lines);
}

FacetDescription convex_hull(const std::vector<Vec>& points) {
    if (points.empty()) throw InputError("convex_hull: empty point list");
    const std::size_t n = points[0].size();
    for (const Vec& p : points) {
        if (p.size() != n) throw InputError("convex_hull: dimension mismatch");
    }
    return Polyhedron::from_points(n, points).facet_description();
}

} // namespace conelab
