#include "conelab/union_set.hpp"

#include "conelab/lp.hpp"

#include <algorithm>
#include <set>

namespace conelab {

UnionSet UnionSet::make(std::vector<PolyhedralCone> pieces, Vec basepoint) {
    if (pieces.empty()) throw InputError("UnionSet: at least one piece required");
    for (const PolyhedralCone& p : pieces) {
        if (p.dim() != basepoint.size())
            throw InputError("UnionSet: piece/basepoint dimension mismatch");
    }
    UnionSet u;
    u.pieces = std::move(pieces);
    u.basepoint = std::move(basepoint);
    return u;
}

UnionSet UnionSet::of(PolyhedralCone piece, std::size_t n) {
    return make({std::move(piece)}, zero_vec(n));
}

bool UnionSet::contains(const Vec& p) const {
    const Vec v = sub(p, basepoint);
    for (const PolyhedralCone& piece : pieces) {
        if (piece.contains(v)) return true;
    }
    return false;
}

namespace {

// Keep only maximal cones; the union is unchanged.
std::vector<PolyhedralCone> prune_absorbed(std::vector<PolyhedralCone> cones) {
    std::vector<bool> keep(cones.size(), true);
    for (std::size_t i = 0; i < cones.size(); ++i) {
        for (std::size_t j = 0; j < cones.size() && keep[i]; ++j) {
            if (i == j) continue;
            if (cones[j].contains(cones[i]) &&
                (!cones[i].contains(cones[j]) || j < i)) {
                keep[i] = false;
            }
        }
    }
    std::vector<PolyhedralCone> out;
    for (std::size_t i = 0; i < cones.size(); ++i) {
        if (keep[i]) out.push_back(std::move(cones[i]));
    }
    return out;
}

std::vector<Vec> arrangement_normals(const std::vector<PolyhedralCone>& pieces) {
    std::set<Vec> seen;
    for (const PolyhedralCone& p : pieces) {
        for (const Vec& a : p.facet_normals()) seen.insert(primitive(a, true));
        for (const Vec& a : p.equality_normals()) seen.insert(primitive(a, true));
    }
    return {seen.begin(), seen.end()};
}

// Depth-first sign-vector enumeration with LP pruning.  Strict signs
// are expressed homogeneously (<a,x> >= 1 resp. <= -1); base_cons are
// additional homogeneous halfspaces restricting the arrangement.
void enumerate_rec(const std::vector<Vec>& normals, std::size_t n, std::size_t idx,
                   std::vector<int>& sign, std::vector<Halfspace>& cons,
                   std::vector<Halfspace>& eqs, std::vector<Cell>& out) {
    auto point = lp_feasible_point(cons, eqs);
    if (!point) return;
    if (point->empty()) *point = zero_vec(n);  // no constraints at all
    if (idx == normals.size()) {
        out.push_back({sign, std::move(*point)});
        return;
    }
    const Vec& a = normals[idx];
    for (int s : {1, -1, 0}) {
        sign.push_back(s);
        if (s == 0) {
            eqs.push_back({a, Rat(0)});
            enumerate_rec(normals, n, idx + 1, sign, cons, eqs, out);
            eqs.pop_back();
        } else {
            cons.push_back({s > 0 ? neg(a) : a, Rat(-1)});
            enumerate_rec(normals, n, idx + 1, sign, cons, eqs, out);
            cons.pop_back();
        }
        sign.pop_back();
    }
}

std::vector<Cell> enumerate_cells(const std::vector<Vec>& normals, std::size_t n,
                                  std::vector<Halfspace> base_cons) {
    std::vector<int> sign;
    std::vector<Halfspace> eqs;
    std::vector<Cell> out;
    enumerate_rec(normals, n, 0, sign, base_cons, eqs, out);
    return out;
}

} // namespace

UnionSet intersect(const UnionSet& a, const UnionSet& b) {
    if (a.basepoint != b.basepoint)
        throw InputError("UnionSet intersection requires a common basepoint");
    std::vector<PolyhedralCone> pieces;
    for (const PolyhedralCone& pa : a.pieces) {
        for (const PolyhedralCone& pb : b.pieces) {
            pieces.push_back(intersect(pa, pb));
        }
    }
    return UnionSet::make(prune_absorbed(std::move(pieces)), a.basepoint);
}

CellDecomposition cell_decomposition(const UnionSet& u) {
    CellDecomposition cd;
    cd.normals = arrangement_normals(u.pieces);
    cd.cells = enumerate_cells(cd.normals, u.dim(), {});
    return cd;
}

std::vector<PolyhedralCone> bouligand_cone_at(const UnionSet& u, const Vec& y) {
    if (y.size() != u.dim()) throw InputError("bouligand_cone_at: dimension mismatch");
    if (!u.contains(y)) throw PointNotInSet("bouligand_cone_at: point outside the set");
    const Vec v = sub(y, u.basepoint);
    std::vector<PolyhedralCone> cones;
    for (const PolyhedralCone& piece : u.pieces) {
        if (!piece.contains(v)) continue;
        PolyhedralCone t = tangent_cone_at(piece, v);
        if (std::find(cones.begin(), cones.end(), t) == cones.end()) cones.push_back(t);
    }
    return prune_absorbed(std::move(cones));
}

std::optional<Vec> union_coverage_witness(const PolyhedralCone& c,
                                          const std::vector<PolyhedralCone>& pieces) {
    for (const PolyhedralCone& p : pieces) {
        if (p.contains(c)) return std::nullopt;
    }
    // subdivide c by every piece hyperplane: each cell lies entirely in
    // or out of every piece, so its representative decides coverage
    std::vector<Cell> cells = enumerate_cells(arrangement_normals(pieces), c.dim(), c.halfspaces());
    for (const Cell& cell : cells) {
        bool covered = false;
        for (const PolyhedralCone& p : pieces) {
            if (p.contains(cell.rep)) {
                covered = true;
                break;
            }
        }
        if (!covered) return cell.rep;
    }
    return std::nullopt;
}

PolyhedralCone clarke_tangent_cone(const UnionSet& u) {
    const std::size_t n = u.dim();
    CellDecomposition cd = cell_decomposition(u);

    // T = ∩_{cells meeting the union} (∪ tangent cones of the pieces
    // containing the cell); the intersection of unions is expanded
    // distributively with absorption pruning after every step.
    std::vector<PolyhedralCone> current{PolyhedralCone::full_space(n)};
    for (const Cell& cell : cd.cells) {
        std::vector<PolyhedralCone> value;
        for (const PolyhedralCone& piece : u.pieces) {
            if (!piece.contains(cell.rep)) continue;
            PolyhedralCone t = tangent_cone_at(piece, cell.rep);
            if (std::find(value.begin(), value.end(), t) == value.end())
                value.push_back(std::move(t));
        }
        if (value.empty()) continue;  // cell misses the union
        value = prune_absorbed(std::move(value));
        std::vector<PolyhedralCone> next;
        for (const PolyhedralCone& c : current) {
            for (const PolyhedralCone& t : value) {
                PolyhedralCone m = intersect(c, t);
                if (std::find(next.begin(), next.end(), m) == next.end())
                    next.push_back(std::move(m));
            }
        }
        current = prune_absorbed(std::move(next));
    }

    // the Clarke cone is convex; assert it by showing the conical hull
    // of the residual union adds nothing
    std::vector<Vec> gens;
    for (const PolyhedralCone& c : current) {
        for (const Vec& g : c.generators()) gens.push_back(g);
    }
    PolyhedralCone hull = PolyhedralCone::from_generators(n, gens);
    if (union_coverage_witness(hull, current))
        throw CellAlgorithmError("clarke_tangent_cone: cell intersection is not convex");
    return hull;
}

PolyhedralCone clarke_normal_cone(const UnionSet& u) {
    return polar(clarke_tangent_cone(u));
}

InclusionReport verify_tangential_intersection(const UnionSet& a, const UnionSet& b) {
    InclusionReport r;
    r.tangent_a = clarke_tangent_cone(a);
    r.tangent_b = clarke_tangent_cone(b);
    r.tangent_meet = clarke_tangent_cone(intersect(a, b));
    const PolyhedralCone lhs = intersect(r.tangent_a, r.tangent_b);
    r.holds = true;
    for (const Vec& g : lhs.generators()) {
        if (!r.tangent_meet.contains(g)) {
            r.holds = false;
            r.violating_direction = g;
            break;
        }
    }
    return r;
}

namespace {

// g = n_a + n_b with n_a, n_b nonnegative combinations of the
// respective generator lists; solved as an LP feasibility problem.
std::optional<std::pair<Vec, Vec>> decompose(const Vec& g, const std::vector<Vec>& ga,
                                             const std::vector<Vec>& gb) {
    const std::size_t ma = ga.size(), mb = gb.size(), n = g.size();
    const std::size_t m = ma + mb;
    if (m == 0) {
        if (is_zero(g)) return std::make_pair(zero_vec(n), zero_vec(n));
        return std::nullopt;
    }
    std::vector<Halfspace> cons;
    for (std::size_t i = 0; i < m; ++i) {
        Vec e = zero_vec(m);
        e[i] = -1;
        cons.push_back({e, Rat(0)});
    }
    std::vector<Halfspace> eqs;
    for (std::size_t j = 0; j < n; ++j) {
        Vec row(m);
        for (std::size_t i = 0; i < ma; ++i) row[i] = ga[i][j];
        for (std::size_t i = 0; i < mb; ++i) row[ma + i] = gb[i][j];
        eqs.push_back({row, g[j]});
    }
    auto lambda = lp_feasible_point(cons, eqs);
    if (!lambda) return std::nullopt;
    Vec na = zero_vec(n), nb = zero_vec(n);
    for (std::size_t i = 0; i < ma; ++i) na = add(na, scale((*lambda)[i], ga[i]));
    for (std::size_t i = 0; i < mb; ++i) nb = add(nb, scale((*lambda)[ma + i], gb[i]));
    return std::make_pair(std::move(na), std::move(nb));
}

} // namespace

DecompositionReport verify_normal_intersection(const UnionSet& a, const UnionSet& b) {
    DecompositionReport r;
    const PolyhedralCone ta = clarke_tangent_cone(a);
    const PolyhedralCone tb = clarke_tangent_cone(b);
    r.normal_a = polar(ta);
    r.normal_b = polar(tb);
    r.normal_meet = clarke_normal_cone(intersect(a, b));
    r.hypothesis_transversal = transversality_radius(ta, tb).transversal;

    const std::vector<Vec> ga = r.normal_a.generators();
    const std::vector<Vec> gb = r.normal_b.generators();
    r.all_decompose = true;
    for (const Vec& g : r.normal_meet.generators()) {
        DecompositionReport::Entry e;
        e.generator = g;
        if (auto d = decompose(g, ga, gb)) {
            e.decomposes = true;
            e.n_a = d->first;
            e.n_b = d->second;
        } else {
            r.all_decompose = false;
        }
        r.entries.push_back(std::move(e));
    }
    return r;
}

} // namespace conelab
