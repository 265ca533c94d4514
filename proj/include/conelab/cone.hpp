#pragma once

#include "conelab/dual.hpp"

#include <vector>

namespace conelab {

/// Closed convex polyhedral cone with both representations kept in sync
/// and canonical: extreme rays in the orthogonal complement of the
/// lineality space, facet normals likewise, everything primitive and
/// lexicographically sorted.  Equality is representation equality.
class PolyhedralCone {
public:
    PolyhedralCone() = default;  // 0-dimensional trivial cone

    static PolyhedralCone from_halfspace_normals(std::size_t n, std::vector<Vec> normals);
    static PolyhedralCone from_halfspaces(std::size_t n, const std::vector<Halfspace>& hs);
    static PolyhedralCone from_generators(std::size_t n, const std::vector<Vec>& gens);

    static PolyhedralCone full_space(std::size_t n);
    static PolyhedralCone zero(std::size_t n);
    static PolyhedralCone nonnegative_orthant(std::size_t n);
    static PolyhedralCone ray(const Vec& v);

    std::size_t dim() const { return dim_; }
    const std::vector<Vec>& rays() const { return rays_; }
    const std::vector<Vec>& lines() const { return lines_; }
    const std::vector<Vec>& facet_normals() const { return ineq_; }
    const std::vector<Vec>& equality_normals() const { return eq_; }

    /// rays plus both orientations of every lineality direction
    std::vector<Vec> generators() const;
    /// facet inequalities plus both orientations of every equality
    std::vector<Halfspace> halfspaces() const;

    bool contains(const Vec& x) const;
    bool contains(const PolyhedralCone& other) const;
    bool operator==(const PolyhedralCone& o) const;
    bool operator!=(const PolyhedralCone& o) const { return !(*this == o); }

    bool is_zero_cone() const { return rays_.empty() && lines_.empty(); }
    bool is_full_space() const { return lines_.size() == dim_; }
    /// dimension of the linear span of the cone
    std::size_t span_dim() const;

    PolyhedralCone negate() const;

private:
    std::size_t dim_ = 0;
    std::vector<Vec> rays_, lines_;  // V-rep
    std::vector<Vec> ineq_, eq_;     // H-rep: <a,x> <= 0 / = 0
};

/// Polar cone {y : <y, x> <= 0 for all x in c}.
PolyhedralCone polar(const PolyhedralCone& c);

/// Minkowski sum (union of generator lists; automatically closed).
PolyhedralCone minkowski_sum(const PolyhedralCone& a, const PolyhedralCone& b);

/// Intersection (concatenated H-reps, canonicalized).
PolyhedralCone intersect(const PolyhedralCone& a, const PolyhedralCone& b);

/// Tangent cone of c at one of its points y: active constraints kept.
PolyhedralCone tangent_cone_at(const PolyhedralCone& c, const Vec& y);

} // namespace conelab
