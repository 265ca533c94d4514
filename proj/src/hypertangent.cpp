#include "conelab/hypertangent.hpp"

namespace conelab {

namespace {

// exact Euclidean distance comparison: is (j/grid) * |a| <= -<a, v> for
// every bounding halfspace a of the piece?
bool convex_radius_at_least(const PolyhedralCone& piece, const Vec& v, const Rat& eta) {
    for (const Halfspace& h : piece.halfspaces()) {
        if (!le_mul_sqrt(eta, norm_sq(h.normal), -dot(h.normal, v))) return false;
    }
    return true;
}

// sup-norm tube: piece + cone(v + eta * box corners) inside the union;
// the box contains the Euclidean ball, so this underestimates eps(v)
bool union_radius_at_least(const UnionSet& u, const Vec& v, const Rat& eta) {
    const std::size_t n = u.dim();
    std::vector<Vec> corners;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        Vec c = v;
        for (std::size_t i = 0; i < n; ++i) c[i] += (mask >> i & 1) ? eta : -eta;
        corners.push_back(std::move(c));
    }
    for (const PolyhedralCone& piece : u.pieces) {
        std::vector<Vec> gens = piece.generators();
        gens.insert(gens.end(), corners.begin(), corners.end());
        PolyhedralCone tube = PolyhedralCone::from_generators(n, gens);
        if (union_coverage_witness(tube, u.pieces)) return false;
    }
    return true;
}

} // namespace

Rat hypertangent_epsilon(const UnionSet& u, const Vec& v, int grid) {
    if (grid < 2) throw InputError("hypertangent_epsilon: grid must be at least 2");
    if (v.size() != u.dim()) throw InputError("hypertangent_epsilon: dimension mismatch");

    auto at_least = [&](int j) {
        const Rat eta(j, grid);
        if (u.pieces.size() == 1) return convex_radius_at_least(u.pieces[0], v, eta);
        return union_radius_at_least(u, v, eta);
    };
    // largest grid value that certifies; eta stays below 1
    int lo = 0, hi = grid - 1;
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (at_least(mid)) lo = mid;
        else hi = mid - 1;
    }
    if (lo == 0)
        throw NotHypertangent("no positive hypertangency radius on the grid");
    return Rat(lo, grid);
}

UniformTangentSetCandidate open_uts_from_hypertangents(const UnionSet& u,
                                                       const std::vector<Vec>& directions,
                                                       int grid) {
    std::vector<Vec> d;
    for (const Vec& v : directions) {
        d.push_back(scale(hypertangent_epsilon(u, v, grid), v));
    }
    const std::vector<OracleParams> rows = {{Rat(1, 8), Rat(1), Rat(1), 60, 13}};
    UniformTangentSetCandidate cand = certify_uts(u, std::move(d), rows);

    // Clarke containment: the conical hull of D must sit in the cone
    PolyhedralCone hull = PolyhedralCone::from_generators(u.dim(), cand.polytope);
    if (!clarke_tangent_cone(u).contains(hull))
        throw NotHypertangent("hypertangent candidate escapes the Clarke tangent cone");
    return cand;
}

} // namespace conelab
