#pragma once

#include "conelab/union_set.hpp"

#include <optional>
#include <vector>

namespace conelab {

/// Raised when a query point lies outside the (effective) domain.
class PointOutsideDomain : public InputError {
public:
    using InputError::InputError;
};

/// One affine form <gradient, x> + offset.
struct AffinePiece {
    Vec gradient;
    Rat offset;
};

/// Piecewise-affine function: the max of finitely many affine forms,
/// optionally negated (min-type), optionally restricted to a polyhedral
/// domain (an indicator added outside).  Proper and lower semicontinuous
/// by construction; values are exact rationals at rational points.
class PWAFunction {
public:
    enum class Kind { Max, NegMax };

    static PWAFunction max_of(std::size_t n, std::vector<AffinePiece> pieces,
                              std::optional<Polyhedron> domain = std::nullopt);
    static PWAFunction neg_max_of(std::size_t n, std::vector<AffinePiece> pieces,
                                  std::optional<Polyhedron> domain = std::nullopt);

    std::size_t dim() const { return dim_; }
    Kind kind() const { return kind_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }
    const std::optional<Polyhedron>& domain() const { return domain_; }

    bool in_domain(const Vec& x) const;
    /// Exact value; throws PointOutsideDomain.
    Rat value(const Vec& x) const;

    /// c * f for rational c > 0 (the kind is preserved).
    PWAFunction scaled(const Rat& c) const;

private:
    PWAFunction() = default;
    std::size_t dim_ = 0;
    Kind kind_ = Kind::Max;
    std::vector<AffinePiece> pieces_;
    std::optional<Polyhedron> domain_;
};

/// One cell of the affine decomposition: a closed polyhedral region on
/// which the function agrees with <gradient, x> + offset.  The regions
/// of a function cover its domain and overlap only where the affine
/// values agree.
struct AffineRegion {
    Polyhedron region;
    Vec gradient;
    Rat offset;
};

/// Exact affine decomposition of f (empty regions dropped).
std::vector<AffineRegion> affine_regions(const PWAFunction& f);

/// Affine decomposition of f1 + f2 by piece arithmetic over the common
/// region arrangement: every nonempty intersection of a region of f1
/// with a region of f2 carries the summed gradient and offset.
std::vector<AffineRegion> sum_regions(const PWAFunction& f1, const PWAFunction& f2);

/// Value of the decomposed function; throws PointOutsideDomain when no
/// region contains x.
Rat region_value(const std::vector<AffineRegion>& regions, const Vec& x);

/// Tangent cone of a polyhedron at one of its points: the cone of the
/// constraints active at y.
PolyhedralCone polyhedron_tangent_cone(const Polyhedron& p, const Vec& y);

/// The epigraph of the decomposed function as a locally conical
/// UnionSet in dimension n+1 at basepoint (x0, f(x0)): one piece per
/// region containing x0, the tangent cone at the basepoint of
/// {(x, r) : x in region, r >= <gradient, x> + offset}.
UnionSet epigraph_at(const std::vector<AffineRegion>& regions, const Vec& x0);
UnionSet epigraph_at(const PWAFunction& f, const Vec& x0);

} // namespace conelab
