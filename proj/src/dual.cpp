#include "conelab/dual.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace conelab {

namespace {

// Deduplicates up to positive scaling; redundant inputs only cost the
// incremental algorithm below one cheap pass each.
std::vector<Vec> dedupe_directions(const std::vector<Vec>& vecs) {
    std::vector<Vec> out;
    std::set<Vec> seen;
    for (const Vec& v : vecs) {
        if (is_zero(v)) continue;
        Vec p = primitive(v, /*positive_leading=*/false);
        if (seen.insert(p).second) out.push_back(std::move(p));
    }
    return out;
}

// One ray of the double-description iteration, with the set of already
// processed constraints it satisfies with equality (as a bitset).
struct DDRay {
    Vec v;
    std::vector<std::uint64_t> tight;
};

bool tight_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t w = 0; w < a.size(); ++w) {
        if (a[w] & ~b[w]) return false;
    }
    return true;
}

// Extreme rays of a pointed cone {y : <a, y> <= 0}, rank(normals) = n,
// by the incremental double-description method.  The iteration starts
// from a simplicial subcone cut out by n linearly independent normals
// (whose rays are the columns of the negated inverse); the remaining
// constraints are added one at a time, keeping the nonpositive rays and
// combining adjacent positive/negative ray pairs on the new boundary.
// Adjacency is decided by the algebraic rank test, with the cheap
// combinatorial tight-set test as a pre-filter; the tight sets stay
// exact because a combination is tight at an earlier constraint
// precisely when both parents are.
std::vector<Vec> pointed_rays(const std::vector<Vec>& normals, std::size_t n) {
    const std::size_t m = normals.size();
    const std::size_t words = m / 64 + 1;

    // greedily select n independent normals for the starting simplex
    std::vector<std::size_t> order;
    Mat chosen;
    std::vector<bool> in_basis(m, false);
    for (std::size_t i = 0; i < m && order.size() < n; ++i) {
        Mat trial = chosen;
        trial.push_back(normals[i]);
        if (rank(trial) == chosen.size() + 1) {
            chosen.push_back(normals[i]);
            order.push_back(i);
            in_basis[i] = true;
        }
    }
    if (order.size() < n)
        throw std::logic_error("pointed_rays: constraint matrix is rank-deficient");
    for (std::size_t i = 0; i < m; ++i) {
        if (!in_basis[i]) order.push_back(i);
    }

    // invert the basis: rays r_i with <b_j, r_i> = -delta_ij
    Mat aug = chosen;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i].push_back(i == j ? Rat(1) : Rat(0));
    }
    row_reduce(aug);
    std::vector<DDRay> rays;
    for (std::size_t i = 0; i < n; ++i) {
        Vec r(n);
        for (std::size_t j = 0; j < n; ++j) r[j] = -aug[j][n + i];  // column i of -B^{-1}
        DDRay ray{std::move(r), std::vector<std::uint64_t>(words, 0)};
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) ray.tight[j / 64] |= 1ull << j % 64;
        }
        rays.push_back(std::move(ray));
    }

    for (std::size_t t = n; t < m; ++t) {
        const Vec& a = normals[order[t]];
        auto set_bit = [&](std::vector<std::uint64_t>& bits) { bits[t / 64] |= 1ull << t % 64; };

        std::vector<Rat> s(rays.size());
        bool any_pos = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = dot(a, rays[i].v);
            any_pos = any_pos || s[i] > 0;
        }
        if (!any_pos) {  // the constraint is inactive or touches only
            for (std::size_t i = 0; i < rays.size(); ++i) {
                if (s[i] == 0) set_bit(rays[i].tight);
            }
            continue;
        }

        std::vector<DDRay> next;
        std::set<Vec> seen;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (s[i] > 0) continue;
            DDRay kept = rays[i];
            if (s[i] == 0) set_bit(kept.tight);
            seen.insert(primitive(kept.v, false));
            next.push_back(std::move(kept));
        }
        for (std::size_t p = 0; p < rays.size(); ++p) {
            if (s[p] <= 0) continue;
            for (std::size_t q = 0; q < rays.size(); ++q) {
                if (s[q] >= 0) continue;
                std::vector<std::uint64_t> common(words);
                for (std::size_t w = 0; w < words; ++w)
                    common[w] = rays[p].tight[w] & rays[q].tight[w];
                // cheap necessary condition: no third ray tight
                // everywhere both are
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    adjacent = !tight_subset(common, rays[r].tight);
                }
                if (!adjacent) continue;
                // exact test: the commonly tight normals span a face of
                // dimension 2, i.e. have rank n - 2 (robust under the
                // degeneracy that makes the combinatorial test over-
                // generate and blow the iteration up)
                Mat tight_rows;
                for (std::size_t j = 0; j < t; ++j) {
                    if (common[j / 64] >> j % 64 & 1) tight_rows.push_back(normals[order[j]]);
                }
                if (rank(std::move(tight_rows)) != n - 2) continue;
                Vec w = add(scale(s[p], rays[q].v), scale(-s[q], rays[p].v));
                if (is_zero(w)) continue;
                Vec key = primitive(w, false);
                if (!seen.insert(key).second) continue;
                set_bit(common);
                next.push_back({std::move(key), std::move(common)});
            }
        }
        rays = std::move(next);
    }

    std::vector<Vec> out;
    out.reserve(rays.size());
    for (DDRay& r : rays) out.push_back(primitive(r.v, /*positive_leading=*/false));
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

} // namespace

ConeGenerators dual_rays(const std::vector<Vec>& normals, std::size_t n) {
    for (const Vec& a : normals) {
        if (a.size() != n) throw InputError("dual_rays: normal dimension mismatch");
    }
    ConeGenerators g;

    std::vector<Vec> nz = dedupe_directions(normals);
    g.lines = kernel_basis(nz, n);
    for (Vec& l : g.lines) l = primitive(l, /*positive_leading=*/true);
    std::sort(g.lines.begin(), g.lines.end(), lex_less);

    if (g.lines.size() == n) return g;  // whole space (or no constraints)

    if (g.lines.empty()) {
        g.rays = pointed_rays(nz, n);
        return g;
    }

    // Split off the lineality space: work in its orthogonal complement,
    // where the cone is pointed, then lift back.
    std::vector<Vec> w = kernel_basis(g.lines, n);  // basis of L^perp
    const std::size_t k = w.size();
    std::vector<Vec> proj;
    proj.reserve(nz.size());
    for (const Vec& a : nz) {
        Vec row(k);
        for (std::size_t j = 0; j < k; ++j) row[j] = dot(a, w[j]);
        proj.push_back(row);
    }
    for (const Vec& y : pointed_rays(proj, k)) {
        Vec r = zero_vec(n);
        for (std::size_t j = 0; j < k; ++j) r = add(r, scale(y[j], w[j]));
        g.rays.push_back(primitive(r, /*positive_leading=*/false));
    }
    std::sort(g.rays.begin(), g.rays.end(), lex_less);
    return g;
}

std::vector<Vec> double_description(const std::vector<Halfspace>& cone_h, std::size_t n) {
    std::vector<Vec> normals;
    for (const Halfspace& h : cone_h) {
        if (h.offset != 0) throw InputError("double_description: inhomogeneous halfspace");
        normals.push_back(h.normal);
    }
    ConeGenerators g = dual_rays(normals, n);
    std::vector<Vec> out = g.rays;
    for (const Vec& l : g.lines) {
        out.push_back(l);
        out.push_back(neg(l));
    }
    return out;
}

std::vector<Halfspace> double_description_inverse(const std::vector<Vec>& generators,
                                                  std::size_t n) {
    // Facets of cone(G) are the generators of its polar {a : <a, g> <= 0}.
    ConeGenerators polar = dual_rays(generators, n);
    std::vector<Halfspace> out;
    for (const Vec& r : polar.rays) out.push_back({r, Rat(0)});
    for (const Vec& l : polar.lines) {
        out.push_back({l, Rat(0)});
        out.push_back({neg(l), Rat(0)});
    }
    return out;
}

} // namespace conelab
