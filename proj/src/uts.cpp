#include "conelab/uts.hpp"

#include "conelab/lp.hpp"

#include <algorithm>

namespace conelab {

bool UniformTangentSetCandidate::certified() const {
    for (const CertificateRow& r : certificate_table)
        if (r.passed) return true;
    return false;
}

bool UniformTangentSetCandidate::exactly_certified() const {
    for (const CertificateRow& r : certificate_table)
        if (r.passed && r.exact) return true;
    return false;
}

bool in_convex_hull(const std::vector<Vec>& points, const Vec& x) {
    const std::size_t m = points.size(), n = x.size();
    if (m == 0) return false;
    std::vector<Halfspace> cons;
    for (std::size_t i = 0; i < m; ++i) {
        Vec e = zero_vec(m);
        e[i] = -1;
        cons.push_back({e, Rat(0)});
    }
    std::vector<Halfspace> eqs;
    Vec ones(m, Rat(1));
    eqs.push_back({ones, Rat(1)});
    for (std::size_t j = 0; j < n; ++j) {
        Vec row(m);
        for (std::size_t i = 0; i < m; ++i) row[i] = points[i][j];
        eqs.push_back({row, x[j]});
    }
    return lp_feasible_point(cons, eqs).has_value();
}

namespace {

// exact path: D inside one convex piece (subsets of the difference of a
// convex set are uniform tangent sets, for every parameter choice)
bool convex_piece_contains(const UnionSet& host, const std::vector<Vec>& verts) {
    for (const PolyhedralCone& piece : host.pieces) {
        bool all = true;
        for (const Vec& v : verts) {
            if (!piece.contains(v)) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

// exact path: piece + cone(D + eps*B1) stays inside the union, for
// every piece (B1 = cross-polytope, inner ball); then any set point
// advances along any d in D with an eps-tube entirely inside the set
bool tube_containment(const UnionSet& host, const std::vector<Vec>& verts, const Rat& eps) {
    const std::size_t n = host.dim();
    for (const PolyhedralCone& piece : host.pieces) {
        std::vector<Vec> gens = piece.generators();
        for (const Vec& v : verts) {
            for (std::size_t i = 0; i < n; ++i) {
                Vec up = v, dn = v;
                up[i] += eps;
                dn[i] -= eps;
                gens.push_back(std::move(up));
                gens.push_back(std::move(dn));
            }
        }
        PolyhedralCone tube = PolyhedralCone::from_generators(n, gens);
        if (union_coverage_witness(tube, host.pieces)) return false;
    }
    return true;
}

// z in host with |z - c|_1 <= r, via LP over (z, u) per piece.
std::optional<Vec> find_member_in_l1_ball(const UnionSet& host, const Vec& c, const Rat& r) {
    const std::size_t n = c.size();
    for (const PolyhedralCone& piece : host.pieces) {
        std::vector<Halfspace> cons;
        for (const Halfspace& h : piece.halfspaces()) {
            Vec row = h.normal;
            row.resize(2 * n, Rat(0));
            cons.push_back({std::move(row), dot(h.normal, host.basepoint)});
        }
        for (std::size_t i = 0; i < n; ++i) {
            Vec up = zero_vec(2 * n), dn = zero_vec(2 * n);
            up[i] = 1;
            up[n + i] = -1;
            cons.push_back({std::move(up), c[i]});
            dn[i] = -1;
            dn[n + i] = -1;
            cons.push_back({std::move(dn), -c[i]});
        }
        Vec sum = zero_vec(2 * n);
        for (std::size_t i = 0; i < n; ++i) sum[n + i] = 1;
        cons.push_back({std::move(sum), r});
        if (auto p = lp_feasible_point(cons, {})) {
            return Vec(p->begin(), p->begin() + static_cast<std::ptrdiff_t>(n));
        }
    }
    return std::nullopt;
}

// lb <= sqrt(q) <= ub with lb > (1 - rel) * ub; q > 0, rel in (0,1)
std::pair<Rat, Rat> sqrt_bracket(const Rat& q, const Rat& rel) {
    Rat s = 1;
    for (;;) {
        Rat lb = sqrt_lower(q * s * s) / s;
        Rat ub = sqrt_upper(q * s * s) / s;
        if (lb > 0 && lb > (1 - rel) * ub) return {lb, ub};
        s *= 2;
    }
}

} // namespace

UniformTangentSetCandidate certify_uts(const UnionSet& host, std::vector<Vec> polytope,
                                       const std::vector<OracleParams>& sampled_rows) {
    for (const Vec& v : polytope) {
        if (v.size() != host.dim()) throw InputError("certify_uts: vertex dimension mismatch");
    }
    std::sort(polytope.begin(), polytope.end(), lex_less);
    polytope.erase(std::unique(polytope.begin(), polytope.end()), polytope.end());

    UniformTangentSetCandidate cand;
    cand.host = host;
    cand.polytope = polytope;

    if (polytope.empty() || convex_piece_contains(host, polytope)) {
        cand.certificate_table.push_back({Rat(0), Rat(0), Rat(0), 0, true, true});
    } else {
        Rat eps(1, 16);
        for (const OracleParams& p : sampled_rows) eps = std::min(eps, p.eps);
        if (tube_containment(host, polytope, eps)) {
            cand.certificate_table.push_back({eps, Rat(0), Rat(0), 0, true, true});
        }
    }

    MembershipOracle oracle =
        MembershipOracle::from_union_set(host, "uts certification host");
    for (const OracleParams& p : sampled_rows) {
        OracleVerdict v = check_uts(oracle, host.basepoint, polytope, p);
        cand.certificate_table.push_back({p.eps, p.delta, p.lambda, p.trials, v.passed(),
                                          false});
    }
    return cand;
}

PropertyReport uts_calculus_check(const UniformTangentSetCandidate& d,
                                  const UniformTangentSetCandidate& d_prime, const Rat& c) {
    if (c <= 0) throw InputError("uts_calculus_check: scale must be positive");
    const std::vector<OracleParams> rows = {{Rat(1, 4), Rat(1), Rat(1), 60, 11},
                                            {Rat(1, 8), Rat(1), Rat(1, 2), 60, 11}};
    PropertyReport rep;

    std::vector<Vec> scaled;
    for (const Vec& v : d.polytope) scaled.push_back(scale(c, v));
    rep.items.push_back({"positive scaling", certify_uts(d.host, scaled, rows).certified()});

    bool subset = true;
    for (const Vec& v : d_prime.polytope) {
        if (!in_convex_hull(d.polytope, v)) subset = false;
    }
    rep.items.push_back(
        {"subset monotonicity",
         subset ? d.certified() : certify_uts(d.host, d_prime.polytope, rows).certified()});

    std::vector<Vec> unioned = d.polytope;
    unioned.insert(unioned.end(), d_prime.polytope.begin(), d_prime.polytope.end());
    rep.items.push_back({"convex hull of union", certify_uts(d.host, unioned, rows).certified()});

    rep.items.push_back({"closure", certify_uts(d.host, d.polytope, rows).certified()});

    if (d.host.pieces.size() == 1) {
        Polyhedron trunc = intersect(cone_as_polyhedron(d.host.pieces[0]),
                                     Polyhedron::cross_polytope(d.host.dim(), Rat(1)));
        rep.items.push_back(
            {"convex truncated difference",
             certify_uts(d.host, trunc.vertices(), rows).certified()});
    }
    return rep;
}

StrongTransversalityResult strong_transversality(const UniformTangentSetCandidate& d_a,
                                                 const UniformTangentSetCandidate& d_b) {
    if (d_a.host.dim() != d_b.host.dim() || d_a.host.basepoint != d_b.host.basepoint)
        return NotCertified{"hosts do not share a basepoint", std::nullopt};
    if (d_a.polytope.empty() || d_b.polytope.empty())
        return NotCertified{"empty candidate polytope", std::nullopt};

    std::vector<Vec> diffs;
    for (const Vec& a : d_a.polytope) {
        for (const Vec& b : d_b.polytope) diffs.push_back(sub(a, b));
    }
    FacetDescription hull = convex_hull(diffs);

    std::vector<Vec> witnesses;
    if (!hull.equations.empty()) {
        for (const Halfspace& e : hull.equations) {
            witnesses.push_back(primitive(e.normal, false));
            witnesses.push_back(primitive(neg(e.normal), false));
        }
    }
    Rat rho_sq = 0;
    bool first = true;
    for (const Halfspace& f : hull.facets) {
        if (f.offset <= 0) {
            witnesses.push_back(primitive(f.normal, false));
            continue;
        }
        Rat r = f.offset * f.offset / norm_sq(f.normal);
        if (first || r < rho_sq) rho_sq = r;
        first = false;
    }
    if (!witnesses.empty() || first) {
        std::sort(witnesses.begin(), witnesses.end(), lex_less);
        std::optional<Halfspace> w;
        if (!witnesses.empty()) w = Halfspace{witnesses.front(), Rat(0)};
        return NotCertified{"0 is not interior to co(D_A - D_B)", w};
    }
    return TransversalityCertificate{d_a, d_b, rho_sq, hull.facets};
}

WitnessRecord witness_search(const TransversalityCertificate& cert, const Vec& x_a,
                             const Vec& x_b, const Rat& epsilon) {
    if (epsilon <= 0 || epsilon >= Rat(1, 3))
        throw InputError("witness_search: epsilon must lie in (0, 1/3)");
    if (x_a == x_b) throw InputError("witness_search: x_a and x_b must differ");
    if (!cert.d_a.host.contains(x_a) || !cert.d_b.host.contains(x_b))
        throw InputError("witness_search: points must lie in their host sets");

    const Vec u = sub(x_a, x_b);
    const Rat q = norm_sq(u);
    auto [s_lb, s_ub] = sqrt_bracket(q, epsilon);  // |u| bracket
    const Rat r = 1 / s_ub;                        // r * |u| in (1 - eps, 1]

    // rescale both candidates by 1/rho_lb so the scaled difference hull
    // covers the unit ball (positive scaling preserves the UTS property)
    const Rat rho_lb = sqrt_lower(cert.rho_squared);
    const Rat k = 1 / rho_lb;
    std::vector<Vec> va_verts, vb_verts;
    for (const Vec& v : cert.d_a.polytope) va_verts.push_back(scale(k, v));
    for (const Vec& v : cert.d_b.polytope) vb_verts.push_back(scale(k, v));

    // target direction d* = -r u with |d*| <= 1; split it as v_a - v_b
    const Vec d_star = scale(-r, u);
    const std::size_t ma = va_verts.size(), mb = vb_verts.size(), n = u.size();
    std::vector<Halfspace> cons;
    for (std::size_t i = 0; i < ma + mb; ++i) {
        Vec e = zero_vec(ma + mb);
        e[i] = -1;
        cons.push_back({e, Rat(0)});
    }
    std::vector<Halfspace> eqs;
    Vec onesa = zero_vec(ma + mb), onesb = zero_vec(ma + mb);
    for (std::size_t i = 0; i < ma; ++i) onesa[i] = 1;
    for (std::size_t i = 0; i < mb; ++i) onesb[ma + i] = 1;
    eqs.push_back({onesa, Rat(1)});
    eqs.push_back({onesb, Rat(1)});
    for (std::size_t j = 0; j < n; ++j) {
        Vec row(ma + mb);
        for (std::size_t i = 0; i < ma; ++i) row[i] = va_verts[i][j];
        for (std::size_t i = 0; i < mb; ++i) row[ma + i] = -vb_verts[i][j];
        eqs.push_back({row, d_star[j]});
    }
    auto weights = lp_feasible_point(cons, eqs);
    if (!weights)
        throw NoWitness("scaled difference hull does not reach the required direction");
    Vec v_a = zero_vec(n), v_b = zero_vec(n);
    for (std::size_t i = 0; i < ma; ++i) v_a = add(v_a, scale((*weights)[i], va_verts[i]));
    for (std::size_t i = 0; i < mb; ++i) v_b = add(v_b, scale((*weights)[ma + i], vb_verts[i]));

    // step size: small enough for the certified lambda (scaled by 1/k)
    // and for t * r <= 1 (t <= s_lb/2 < |u| suffices)
    Rat t = s_lb / 2;
    auto cap_lambda = [&](const UniformTangentSetCandidate& c) {
        for (const CertificateRow& row : c.certificate_table) {
            if (row.passed && !row.exact && row.lambda > 0) t = std::min(t, Rat(row.lambda / k));
        }
    };
    cap_lambda(cert.d_a);
    cap_lambda(cert.d_b);

    // realize the directions inside the hosts within an eps-tube
    auto realize = [&](const UnionSet& host, const Vec& x, const Vec& v) {
        auto z = find_member_in_l1_ball(host, add(x, scale(t, v)), t * epsilon);
        if (!z) throw NoWitness("no realizing point at the certified parameters");
        return scale(1 / t, sub(*z, x));
    };
    WitnessRecord rec;
    rec.x_a = x_a;
    rec.x_b = x_b;
    rec.t = t;
    rec.w_a = realize(cert.d_a.host, x_a, v_a);
    rec.w_b = realize(cert.d_b.host, x_b, v_b);
    rec.eta = 1 - 3 * epsilon;
    rec.decrease = t * rec.eta;

    // M = max vertex norm (upper bound) + eps; both directions obey it
    Rat m_sq = 0;
    for (const Vec& v : va_verts) m_sq = std::max(m_sq, norm_sq(v));
    for (const Vec& v : vb_verts) m_sq = std::max(m_sq, norm_sq(v));
    rec.M = sqrt_upper(m_sq) + epsilon;
    if (norm_sq(rec.w_a) > rec.M * rec.M || norm_sq(rec.w_b) > rec.M * rec.M)
        throw NoWitness("realized direction exceeds the norm bound M");

    // exact squared-form decrease check:
    // |u + t(w_a - w_b)| <= |u| - t*eta  <=>  2*t*eta*sqrt(q) <= q + t^2 eta^2 - after
    const Rat after = norm_sq(add(u, scale(t, sub(rec.w_a, rec.w_b))));
    if (!le_mul_sqrt(2 * t * rec.eta, q, q + t * t * rec.eta * rec.eta - after))
        throw NoWitness("decrease inequality failed in exact arithmetic");
    return rec;
}

PropertyReport uts_intersection_check(const TransversalityCertificate& cert,
                                      const std::vector<Vec>& d_common) {
    PropertyReport rep;
    bool subset = true;
    for (const Vec& v : d_common) {
        if (!in_convex_hull(cert.d_a.polytope, v) || !in_convex_hull(cert.d_b.polytope, v))
            subset = false;
    }
    rep.items.push_back({"d_common inside both candidates", subset});
    if (!subset) return rep;

    UnionSet meet = intersect(cert.d_a.host, cert.d_b.host);
    const std::vector<OracleParams> rows = {{Rat(1, 4), Rat(1), Rat(1), 60, 11}};
    rep.items.push_back({"certifies on the intersection",
                         certify_uts(meet, d_common, rows).certified()});
    return rep;
}

} // namespace conelab
