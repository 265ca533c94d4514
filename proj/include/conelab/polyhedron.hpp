#pragma once

#include "conelab/cone.hpp"

#include <vector>

namespace conelab {

/// Facet description of a (possibly lower-dimensional) convex hull:
/// inequalities plus explicit affine-hull equations.
struct FacetDescription {
    std::vector<Halfspace> facets;      // <a,x> <= b
    std::vector<Halfspace> equations;   // <a,x> = b
};

/// Convex polyhedron represented by its homogenization cone in
/// dimension n+1 (last coordinate is the homogenizing variable).
/// All operations reduce to exact cone calculus.
class Polyhedron {
public:
    static Polyhedron from_points(std::size_t n, const std::vector<Vec>& points);
    static Polyhedron from_halfspaces(std::size_t n, const std::vector<Halfspace>& facets,
                                      const std::vector<Halfspace>& equations = {});
    static Polyhedron from_generators(std::size_t n, const std::vector<Vec>& points,
                                      const std::vector<Vec>& rays,
                                      const std::vector<Vec>& lines = {});
    /// {x : ||x||_1 <= radius}
    static Polyhedron cross_polytope(std::size_t n, const Rat& radius);
    /// {x : ||x||_inf <= radius}
    static Polyhedron box(std::size_t n, const Rat& radius);
    static Polyhedron singleton(const Vec& p);

    std::size_t dim() const { return dim_; }
    bool is_empty() const;
    bool is_bounded() const;

    std::vector<Vec> vertices() const;
    std::vector<Vec> recession_rays() const;
    std::vector<Vec> recession_lines() const;
    FacetDescription facet_description() const;

    bool contains(const Vec& x) const;
    bool contains(const Polyhedron& other) const;
    bool operator==(const Polyhedron& o) const;

    Polyhedron scaled(const Rat& c) const;  // c * P, c != 0
    Polyhedron negated() const { return scaled(Rat(-1)); }
    Polyhedron translated(const Vec& t) const;

    /// Polar {y : <y,x> <= 1 for all x in P}; requires a point evaluation
    /// only, callers check 0 in P when the calculus needs it.
    Polyhedron polar() const;

    const PolyhedralCone& homogenization() const { return cone_; }
    static Polyhedron from_homogenization(std::size_t n, PolyhedralCone c);

private:
    Polyhedron() = default;
    std::size_t dim_ = 0;
    PolyhedralCone cone_;
};

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
Polyhedron minkowski_sum(const Polyhedron& a, const Polyhedron& b);

/// Facet description of co(points), affine-hull equations made explicit.
FacetDescription convex_hull(const std::vector<Vec>& points);

} // namespace conelab
