#pragma once

#include "conelab/cone_ops.hpp"

#include <optional>
#include <vector>

namespace conelab {

/// Raised when a query point is outside the set.
class PointNotInSet : public InputError {
public:
    using InputError::InputError;
};

/// Closed set represented locally as basepoint + union of polyhedral
/// cones (all pieces share the apex at the basepoint, so the set is
/// locally conical there).  Every piece contains 0 by construction.
struct UnionSet {
    std::vector<PolyhedralCone> pieces;
    Vec basepoint;

    static UnionSet make(std::vector<PolyhedralCone> pieces, Vec basepoint);
    /// Convenience: single piece / basepoint at the origin.
    static UnionSet of(PolyhedralCone piece, std::size_t n);

    std::size_t dim() const { return basepoint.size(); }
    bool contains(const Vec& p) const;
};

/// Pairwise piece intersections; the same basepoint is required.
UnionSet intersect(const UnionSet& a, const UnionSet& b);

/// One cell of the central hyperplane arrangement spanned by all piece
/// facet/equality normals: a sign vector together with a representative
/// point satisfying it (strictly where nonzero).
struct Cell {
    std::vector<int> sign;
    Vec rep;
};

struct CellDecomposition {
    std::vector<Vec> normals;  // primitive, deduplicated up to sign
    std::vector<Cell> cells;
};

CellDecomposition cell_decomposition(const UnionSet& u);

/// Tangent cones, at y, of every piece containing y; their union is the
/// contingent (Bouligand) cone of the set at y.
std::vector<PolyhedralCone> bouligand_cone_at(const UnionSet& u, const Vec& y);

/// Exact Clarke tangent cone at the basepoint: the intersection, over
/// all arrangement cells meeting the union, of the cell's Bouligand
/// value.  Convexity of the result is asserted by an exact coverage
/// check; failure of that assertion throws CellAlgorithmError.
class CellAlgorithmError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

PolyhedralCone clarke_tangent_cone(const UnionSet& u);
PolyhedralCone clarke_normal_cone(const UnionSet& u);

/// Exact inclusion test cone ⊆ ∪ pieces; returns a point of the cone
/// outside every piece when the inclusion fails.
std::optional<Vec> union_coverage_witness(const PolyhedralCone& c,
                                          const std::vector<PolyhedralCone>& pieces);

/// T_A ∩ T_B ⊆ T_{A∩B}, LP-certified on generators.
struct InclusionReport {
    bool holds = false;
    PolyhedralCone tangent_a, tangent_b, tangent_meet;
    std::optional<Vec> violating_direction;
};

InclusionReport verify_tangential_intersection(const UnionSet& a, const UnionSet& b);

/// Per-generator decomposition of N_{A∩B} into N_A + N_B.
struct DecompositionReport {
    struct Entry {
        Vec generator;
        bool decomposes = false;
        Vec n_a, n_b;  // valid when decomposes
    };
    bool all_decompose = false;
    bool hypothesis_transversal = false;  // recorded, not assumed
    PolyhedralCone normal_a, normal_b, normal_meet;
    std::vector<Entry> entries;
};

DecompositionReport verify_normal_intersection(const UnionSet& a, const UnionSet& b);

} // namespace conelab
