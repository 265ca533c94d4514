#include "conelab/lp.hpp"

#include <cstddef>
#include <limits>

namespace conelab {

namespace {

// Dense simplex tableau over exact rationals.  Rows are constraints in
// basic form, `obj` holds reduced costs, `obj_rhs` equals -objective.
struct Tableau {
    std::size_t ncols = 0;
    std::vector<Vec> rows;
    Vec rhs;
    Vec obj;
    Rat obj_rhs = 0;
    std::vector<std::size_t> basis;
    std::vector<bool> allowed;

    void pivot(std::size_t r, std::size_t c) {
        const Rat p = rows[r][c];
        const Rat inv = Rat(1) / p;
        for (Rat& x : rows[r]) x *= inv;
        rhs[r] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const Rat f = rows[i][c];
            for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
            rhs[i] -= f * rhs[r];
        }
        if (obj[c] != 0) {
            const Rat f = obj[c];
            for (std::size_t j = 0; j < ncols; ++j) obj[j] -= f * rows[r][j];
            obj_rhs -= f * rhs[r];
        }
        basis[r] = c;
    }

    // Bland's rule.  Returns true on optimum, false on unbounded.
    bool iterate() {
        for (;;) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (allowed[j] && obj[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == ncols) return true;

            std::size_t leave = rows.size();
            Rat best_ratio = 0;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                const Rat ratio = rhs[i] / rows[i][enter];
                if (leave == rows.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter);
        }
    }
};

} // namespace

LpResult lp_solve(const LinearProgram& lp) {
    const std::size_t n = lp.objective.size();
    for (const Halfspace& h : lp.constraints) {
        if (h.normal.size() != n) throw InputError("lp_solve: constraint dimension mismatch");
    }
    const std::size_t m = lp.constraints.size();

    Vec cost = lp.sense == Sense::Min ? lp.objective : neg(lp.objective);

    // Variables: x = u - w with u, w >= 0, then slacks, then artificials.
    const std::size_t nu = n, nw = n, ns = m;
    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i) {
        if (lp.constraints[i].offset < 0) art_rows.push_back(i);
    }
    const std::size_t na = art_rows.size();
    const std::size_t ncols = nu + nw + ns + na;

    Tableau t;
    t.ncols = ncols;
    t.rows.assign(m, zero_vec(ncols));
    t.rhs.assign(m, Rat(0));
    t.basis.assign(m, 0);
    t.allowed.assign(ncols, true);

    std::size_t art = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Halfspace& h = lp.constraints[i];
        const bool flip = h.offset < 0;
        const Rat s = flip ? Rat(-1) : Rat(1);
        for (std::size_t j = 0; j < n; ++j) {
            t.rows[i][j] = s * h.normal[j];
            t.rows[i][nu + j] = -s * h.normal[j];
        }
        t.rows[i][nu + nw + i] = s;
        t.rhs[i] = s * h.offset;
        if (flip) {
            const std::size_t a = nu + nw + ns + art++;
            t.rows[i][a] = 1;
            t.basis[i] = a;
        } else {
            t.basis[i] = nu + nw + i;
        }
    }

    if (na > 0) {
        // Phase 1: minimize the sum of artificials.
        t.obj = zero_vec(ncols);
        for (std::size_t j = nu + nw + ns; j < ncols; ++j) t.obj[j] = 1;
        t.obj_rhs = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] >= nu + nw + ns) {
                for (std::size_t j = 0; j < ncols; ++j) t.obj[j] -= t.rows[i][j];
                t.obj_rhs -= t.rhs[i];
            }
        }
        t.iterate();  // phase 1 is always bounded below by 0
        if (t.obj_rhs != 0) return {LpStatus::Infeasible, Rat(0), {}};

        // Drive remaining artificials out of the basis.
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < nu + nw + ns) continue;
            std::size_t c = ncols;
            for (std::size_t j = 0; j < nu + nw + ns; ++j) {
                if (t.rows[i][j] != 0) {
                    c = j;
                    break;
                }
            }
            if (c != ncols) t.pivot(i, c);
            // else: the row is redundant; leaving the artificial basic at
            // zero is harmless once its column is disallowed below
        }
        for (std::size_t j = nu + nw + ns; j < ncols; ++j) t.allowed[j] = false;
    }

    // Phase 2 objective.
    t.obj = zero_vec(ncols);
    t.obj_rhs = 0;
    for (std::size_t j = 0; j < n; ++j) {
        t.obj[j] = cost[j];
        t.obj[nu + j] = -cost[j];
    }
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t b = t.basis[i];
        if (b < ncols && t.obj[b] != 0) {
            const Rat f = t.obj[b];
            for (std::size_t j = 0; j < ncols; ++j) t.obj[j] -= f * t.rows[i][j];
            t.obj_rhs -= f * t.rhs[i];
        }
    }
    if (!t.iterate()) return {LpStatus::Unbounded, Rat(0), {}};

    Vec x = zero_vec(n);
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t b = t.basis[i];
        if (b < nu) x[b] += t.rhs[i];
        else if (b < nu + nw) x[b - nu] -= t.rhs[i];
    }
    Rat value = dot(lp.objective, x);
    return {LpStatus::Optimum, value, x};
}

std::optional<Vec> lp_feasible_point(const std::vector<Halfspace>& constraints,
                                     const std::vector<Halfspace>& equalities) {
    std::size_t n = 0;
    if (!constraints.empty()) n = constraints[0].normal.size();
    else if (!equalities.empty()) n = equalities[0].normal.size();
    else return Vec{};

    LinearProgram lp;
    lp.objective = zero_vec(n);
    lp.constraints = constraints;
    for (const Halfspace& e : equalities) {
        lp.constraints.push_back(e);
        lp.constraints.push_back({neg(e.normal), -e.offset});
    }
    LpResult r = lp_solve(lp);
    if (r.status != LpStatus::Optimum) return std::nullopt;
    return r.point;
}

} // namespace conelab
