#include "conelab/oracle.hpp"

#include "conelab/lp.hpp"

#include <random>

namespace conelab {

MembershipOracle MembershipOracle::from_union_set(UnionSet u, std::string description) {
    MembershipOracle o;
    o.dim_ = u.dim();
    o.set_ = std::move(u);
    o.description_ = std::move(description);
    return o;
}

MembershipOracle MembershipOracle::from_predicate(std::size_t dim,
                                                  std::function<bool(const Vec&)> eval,
                                                  std::string description) {
    MembershipOracle o;
    o.dim_ = dim;
    o.eval_ = std::move(eval);
    o.description_ = std::move(description);
    return o;
}

namespace {

// z in (basepoint + piece) with |z - c|_1 <= r: variables (z, u),
// u bounding the coordinate deviations.
bool piece_meets_l1_ball(const PolyhedralCone& piece, const Vec& basepoint, const Vec& c,
                         const Rat& r) {
    const std::size_t n = c.size();
    std::vector<Halfspace> cons;
    for (const Halfspace& h : piece.halfspaces()) {
        Vec row = h.normal;
        row.resize(2 * n, Rat(0));
        cons.push_back({std::move(row), dot(h.normal, basepoint)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vec up = zero_vec(2 * n), dn = zero_vec(2 * n);
        up[i] = 1;
        up[n + i] = -1;
        cons.push_back({std::move(up), c[i]});  // z_i - u_i <= c_i
        dn[i] = -1;
        dn[n + i] = -1;
        cons.push_back({std::move(dn), -c[i]});  // -z_i - u_i <= -c_i
    }
    Vec sum = zero_vec(2 * n);
    for (std::size_t i = 0; i < n; ++i) sum[n + i] = 1;
    cons.push_back({std::move(sum), r});
    return lp_feasible_point(cons, {}).has_value();
}

// z in (basepoint + piece) with |z - c|_inf <= r.
bool piece_meets_box(const PolyhedralCone& piece, const Vec& basepoint, const Vec& c,
                     const Rat& r) {
    const std::size_t n = c.size();
    std::vector<Halfspace> cons;
    for (const Halfspace& h : piece.halfspaces()) {
        cons.push_back({h.normal, dot(h.normal, basepoint)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vec e = zero_vec(n);
        e[i] = 1;
        cons.push_back({e, c[i] + r});
        cons.push_back({neg(e), r - c[i]});
    }
    return lp_feasible_point(cons, {}).has_value();
}

} // namespace

MembershipOracle::BallDecision MembershipOracle::ball_probe(const Vec& c, const Rat& r) const {
    if ((*this)(c)) return BallDecision::Member;
    if (set_) {
        for (const PolyhedralCone& piece : set_->pieces) {
            // l1 ball is inside the Euclidean ball: exact success
            if (piece_meets_l1_ball(piece, set_->basepoint, c, r)) return BallDecision::Member;
        }
        bool box_hit = false;
        for (const PolyhedralCone& piece : set_->pieces) {
            if (piece_meets_box(piece, set_->basepoint, c, r)) {
                box_hit = true;
                break;
            }
        }
        // the box contains the Euclidean ball: exact refutation
        if (!box_hit) return BallDecision::Empty;
        return BallDecision::Unknown;
    }
    // black-box fallback: fixed axis pattern; can confirm, never refute
    for (std::size_t i = 0; i < dim_; ++i) {
        for (const Rat& step : {r, Rat(r / 2), Rat(-r / 2), Rat(-r)}) {
            Vec p = c;
            p[i] += step;
            if (eval_(p)) return BallDecision::Member;
        }
    }
    return BallDecision::Unknown;
}

namespace {

Rat rand_frac(std::mt19937_64& g, int den) {  // uniform j/den, j in [-den, den]
    std::uniform_int_distribution<int> d(-den, den);
    return Rat(d(g), den);
}

// direction samples: the vertices of D plus random convex combinations
std::vector<Vec> direction_samples(const std::vector<Vec>& verts, std::mt19937_64& g,
                                   int extra) {
    std::vector<Vec> out = verts;
    if (verts.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
        std::uniform_int_distribution<int> wgt(1, 7);
        for (int i = 0; i < extra; ++i) {
            const Vec& a = verts[pick(g)];
            const Vec& b = verts[pick(g)];
            Rat mu(wgt(g), 8);
            out.push_back(add(scale(mu, a), scale(1 - mu, b)));
        }
    }
    return out;
}

// base points: x0 first (if the oracle accepts it), then rejection
// samples from S ∩ (x0 + delta ball)
std::vector<Vec> point_samples(const MembershipOracle& oracle, const Vec& x0,
                               const Rat& delta, int want, std::mt19937_64& g) {
    std::vector<Vec> out;
    if (oracle(x0)) out.push_back(x0);
    const int budget = 30 * want;
    for (int i = 0; i < budget && static_cast<int>(out.size()) < want; ++i) {
        Vec x = x0;
        for (std::size_t j = 0; j < x.size(); ++j) x[j] += delta * rand_frac(g, 8);
        if (norm_sq(sub(x, x0)) > delta * delta) continue;
        if (oracle(x)) out.push_back(std::move(x));
    }
    if (out.empty())
        throw SamplingStarved("no set point found inside the delta ball: " +
                              oracle.description());
    return out;
}

OracleVerdict run_checker(const MembershipOracle& oracle, const Vec& x0,
                          const std::vector<Vec>& d_vertices, const OracleParams& params,
                          bool sequential) {
    if (params.eps <= 0 || params.delta <= 0 || params.lambda <= 0)
        throw InputError("oracle check: eps, delta, lambda must be positive");
    OracleVerdict verdict;
    verdict.params = params;
    if (d_vertices.empty()) {  // empty D: vacuous pass
        verdict.status = OracleStatus::Passed;
        return verdict;
    }

    std::mt19937_64 g(params.seed);
    const std::vector<Vec> vs = direction_samples(d_vertices, g, params.trials / 4 + 1);
    const std::vector<Vec> xs =
        point_samples(oracle, x0, params.delta, params.trials / 2 + 1, g);

    std::vector<Rat> grid;
    const int depth = sequential ? 8 : 6;
    Rat t = params.lambda;
    for (int m = 0; m < depth; ++m, t /= 2) grid.push_back(t);
    const std::size_t window = sequential ? 3 : grid.size();

    std::uniform_int_distribution<std::size_t> px(0, xs.size() - 1);
    std::uniform_int_distribution<std::size_t> pv(0, vs.size() - 1);
    bool any_unknown = false;
    for (int trial = 0; trial < params.trials; ++trial) {
        const Vec& x = xs[px(g)];
        const Vec& v = vs[pv(g)];
        // sequential mode inspects only the tail of the grid and needs
        // every tail point refuted before it records a counterexample
        std::size_t fails = 0, unknowns = 0;
        for (std::size_t m = grid.size() - window; m < grid.size(); ++m) {
            ++verdict.checks;
            const Vec c = add(x, scale(grid[m], v));
            switch (oracle.ball_probe(c, grid[m] * params.eps)) {
                case MembershipOracle::BallDecision::Member:
                    break;
                case MembershipOracle::BallDecision::Empty:
                    ++fails;
                    if (!sequential) {
                        verdict.status = OracleStatus::Failed;
                        verdict.counterexample = Counterexample{x, v, grid[m]};
                        return verdict;
                    }
                    break;
                case MembershipOracle::BallDecision::Unknown:
                    ++unknowns;
                    ++verdict.inconclusive;
                    any_unknown = true;
                    break;
            }
        }
        if (sequential && fails == window) {
            verdict.status = OracleStatus::Failed;
            verdict.counterexample = Counterexample{x, v, grid.back()};
            return verdict;
        }
    }
    verdict.status = any_unknown ? OracleStatus::Inconclusive : OracleStatus::Passed;
    return verdict;
}

} // namespace

OracleVerdict check_uts(const MembershipOracle& oracle, const Vec& x0,
                        const std::vector<Vec>& d_vertices, const OracleParams& params) {
    return run_checker(oracle, x0, d_vertices, params, false);
}

OracleVerdict check_uts_sequential(const MembershipOracle& oracle, const Vec& x0,
                                   const std::vector<Vec>& d_vertices,
                                   const OracleParams& params) {
    return run_checker(oracle, x0, d_vertices, params, true);
}

OracleVerdict check_clarke_membership(const MembershipOracle& oracle, const Vec& x0,
                                      const Vec& v, const OracleParams& params) {
    if (is_zero(v)) {  // v = 0 is always a tangent direction
        OracleVerdict verdict;
        verdict.params = params;
        verdict.status = OracleStatus::Passed;
        return verdict;
    }
    return check_uts(oracle, x0, {v}, params);
}

EquivalenceReport crosscheck_equivalence(const MembershipOracle& oracle, const Vec& x0,
                                         const std::vector<Vec>& d_vertices,
                                         const std::vector<std::array<Rat, 3>>& grid,
                                         int trials, std::uint64_t seed) {
    EquivalenceReport rep;
    for (const auto& [eps, delta, lambda] : grid) {
        OracleParams p{eps, delta, lambda, trials, seed};
        EquivalenceReport::Row row{eps, delta, lambda};
        row.uniform = check_uts(oracle, x0, d_vertices, p).status;
        row.sequential = check_uts_sequential(oracle, x0, d_vertices, p).status;
        rep.rows.push_back(std::move(row));
    }
    // tension: sequential passes at (eps, delta) but no lambda passes uniform
    for (const auto& row : rep.rows) {
        if (row.sequential != OracleStatus::Passed) continue;
        bool uniform_somewhere = false;
        bool already_flagged = false;
        for (const auto& other : rep.rows) {
            if (other.eps == row.eps && other.delta == row.delta &&
                other.uniform == OracleStatus::Passed) {
                uniform_somewhere = true;
            }
        }
        for (const auto& t : rep.tensions) {
            if (t.first == row.eps && t.second == row.delta) already_flagged = true;
        }
        if (!uniform_somewhere && !already_flagged) {
            rep.tensions.emplace_back(row.eps, row.delta);
        }
    }
    return rep;
}

} // namespace conelab
