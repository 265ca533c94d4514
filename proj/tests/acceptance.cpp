// End-to-end acceptance suite.  Each criterion prints one PASS/FAIL
// line with its runtime and budget; the process exits nonzero if any
// criterion fails or overruns its budget.

#include "conelab/hypertangent.hpp"
#include "conelab/oracle.hpp"
#include "conelab/scenario.hpp"
#include "test_util.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <future>
#include <string>
#include <vector>

using namespace conelab;

namespace {

struct Outcome {
    bool passed = false;
    std::string note;
};

Outcome pass(std::string note) { return {true, std::move(note)}; }
Outcome fail(std::string note) { return {false, std::move(note)}; }

PolyhedralCone random_cone(std::mt19937_64& g, std::size_t n, std::size_t gens) {
    std::vector<Vec> v;
    for (std::size_t i = 0; i < gens; ++i) v.push_back(testutil::rand_vec(g, n, -2, 2));
    return PolyhedralCone::from_generators(n, v);
}

// ---------------------------------------------------------------- 1
Outcome polar_sandwich_corpus() {
    auto g = testutil::rng(101);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 1 + i % 3;
        std::vector<Vec> pa, pb;
        for (std::size_t k = 0; k < n + 2; ++k) {
            pa.push_back(testutil::rand_vec(g, n, -2, 2));
            pb.push_back(testutil::rand_vec(g, n, -2, 2));
        }
        pa.push_back(zero_vec(n));
        pb.push_back(zero_vec(n));
        const Polyhedron a = Polyhedron::from_points(n, pa);
        const Polyhedron b = Polyhedron::from_points(n, pb);
        if (!verify_polar_sandwich(a, b).all_hold())
            return fail("inclusion violated on pair " + std::to_string(i));
    }
    return pass("100 random polytope pairs, dim <= 3, all four inclusions exact");
}

// ---------------------------------------------------------------- 2
Outcome polar_involution_duality() {
    auto g = testutil::rng(102);
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = 1 + i % 4;
        const PolyhedralCone a = random_cone(g, n, n + 1 + i % 3);
        const PolyhedralCone b = random_cone(g, n, n + 1 + (i + 1) % 3);
        if (polar(polar(a)) != a)
            return fail("polar involution failed on cone " + std::to_string(i));
        if (polar(minkowski_sum(a, b)) != intersect(polar(a), polar(b)))
            return fail("sum-polar duality failed on pair " + std::to_string(i));
    }
    return pass("50 random cones / pairs, dim <= 4, exact equality");
}

// -------------------------------------------------------------- 3+4
std::vector<Vec> truncated_vertices(const PolyhedralCone& c) {
    return intersect(cone_as_polyhedron(c), Polyhedron::cross_polytope(c.dim(), Rat(1)))
        .vertices();
}

struct CertifiedPair {
    UnionSet a, b;
    TransversalityCertificate cert;
};

std::vector<CertifiedPair> certified_pairs;  // built by 3, reused by 4

Outcome normal_decomposition_corpus() {
    auto g = testutil::rng(103);
    certified_pairs.clear();
    int attempts = 0;
    while (certified_pairs.size() < 25 && attempts < 600) {
        ++attempts;
        const std::size_t n = 2 + attempts % 2;
        const UnionSet a = UnionSet::of(random_cone(g, n, n + 2), n);
        const UnionSet b = UnionSet::of(random_cone(g, n, n + 2), n);
        const UniformTangentSetCandidate d_a =
            certify_uts(a, truncated_vertices(a.pieces[0]),
                        {{Rat(1, 8), Rat(1), Rat(1, 2), 40, 900 + attempts}});
        const UniformTangentSetCandidate d_b =
            certify_uts(b, truncated_vertices(b.pieces[0]),
                        {{Rat(1, 8), Rat(1), Rat(1, 2), 40, 901 + attempts}});
        if (!d_a.certified() || !d_b.certified()) continue;
        StrongTransversalityResult r = strong_transversality(d_a, d_b);
        auto* cert = std::get_if<TransversalityCertificate>(&r);
        if (!cert || cert->rho_squared <= 0) continue;

        const DecompositionReport rep = verify_normal_intersection(a, b);
        if (!rep.hypothesis_transversal)
            return fail("certified pair not flagged transversal (attempt " +
                        std::to_string(attempts) + ")");
        if (!rep.all_decompose)
            return fail("a normal generator failed to decompose (attempt " +
                        std::to_string(attempts) + ")");
        certified_pairs.push_back({a, b, std::move(*cert)});
    }
    if (certified_pairs.size() < 25)
        return fail("only " + std::to_string(certified_pairs.size()) +
                    " certified pairs in " + std::to_string(attempts) + " attempts");
    return pass("25 certified transversal pairs, every normal generator decomposes");
}

Vec random_cone_point(std::mt19937_64& g, const PolyhedralCone& c) {
    Vec x = zero_vec(c.dim());
    for (const Vec& gen : c.generators()) {
        std::uniform_int_distribution<int> d(0, 4);
        x = add(x, scale(Rat(d(g), 8), gen));
    }
    return x;
}

Outcome witness_decrease_corpus() {
    if (certified_pairs.size() < 25) return fail("no certified corpus (criterion 3 failed)");
    auto g = testutil::rng(104);
    const Rat eps(1, 10), eta = 1 - 3 * eps;
    for (std::size_t p = 0; p < certified_pairs.size(); ++p) {
        const CertifiedPair& cp = certified_pairs[p];
        for (int s = 0; s < 20; ++s) {
            Vec x_a = random_cone_point(g, cp.a.pieces[0]);
            Vec x_b = random_cone_point(g, cp.b.pieces[0]);
            if (x_a == x_b) x_a = add(x_a, cp.cert.d_a.polytope.front());
            WitnessRecord w;
            try {
                w = witness_search(cp.cert, x_a, x_b, eps);
            } catch (const NoWitness&) {
                return fail("no witness on pair " + std::to_string(p) + ", sample " +
                            std::to_string(s));
            }
            // |x_a - x_b + t (w_a - w_b)|^2 <= (|x_a - x_b| - t*eta)^2, exactly
            const Rat gap_sq = norm_sq(sub(x_a, x_b));
            const Rat lhs = norm_sq(add(sub(x_a, x_b), scale(w.t, sub(w.w_a, w.w_b))));
            const Rat teta = w.t * eta;
            if (w.eta != eta || !le_mul_sqrt(2 * teta, gap_sq, gap_sq + teta * teta - lhs))
                return fail("decrease inequality violated on pair " + std::to_string(p));
        }
    }
    return pass("20 witness records per certified pair, decrease exact at eps = 1/10");
}

// ---------------------------------------------------------------- 5
std::vector<Vec> direction_grid_64() {
    std::vector<Vec> dirs;
    for (int i = -8; i < 8; ++i) {
        dirs.push_back({Rat(i), Rat(8)});
        dirs.push_back({Rat(i), Rat(-8)});
        dirs.push_back({Rat(8), Rat(i)});
        dirs.push_back({Rat(-8), Rat(i)});
    }
    return dirs;  // the 64 integer points on the sup-norm sphere of radius 8
}

Outcome clarke_exact_vs_oracle() {
    const std::vector<std::pair<std::string, UnionSet>> sets = gallery_sets();
    if (sets.size() != 6) return fail("expected six gallery sets");
    const std::vector<Vec> dirs = direction_grid_64();

    struct SetResult {
        int disagreements = 0, inconclusive = 0;
    };
    std::vector<std::future<SetResult>> futures;
    for (const auto& [name, u] : sets) {
        futures.push_back(std::async(std::launch::async, [&u = u, &dirs] {
            SetResult r;
            const PolyhedralCone t = clarke_tangent_cone(u);
            const MembershipOracle o = MembershipOracle::from_union_set(u, "gallery");
            for (std::size_t i = 0; i < dirs.size(); ++i) {
                const OracleParams params{Rat(1, 16), Rat(1, 8), Rat(1, 16), 500,
                                          2026 + i};
                const OracleVerdict v =
                    check_clarke_membership(o, u.basepoint, dirs[i], params);
                const bool member = t.contains(dirs[i]);
                if ((member && v.failed()) || (!member && v.passed())) ++r.disagreements;
                if (v.status == OracleStatus::Inconclusive) ++r.inconclusive;
            }
            return r;
        }));
    }
    int disagreements = 0, inconclusive = 0;
    for (auto& f : futures) {
        SetResult r = f.get();
        disagreements += r.disagreements;
        inconclusive += r.inconclusive;
    }
    const int rows = static_cast<int>(sets.size() * dirs.size());
    if (disagreements > 0)
        return fail(std::to_string(disagreements) + " exact-vs-oracle disagreements");
    if (20 * inconclusive > rows)  // more than 5%
        return fail(std::to_string(inconclusive) + "/" + std::to_string(rows) +
                    " inconclusive rows exceeds 5%");
    return pass("6 sets x 64 directions, 0 disagreements, " + std::to_string(inconclusive) +
                "/" + std::to_string(rows) + " inconclusive");
}

// ---------------------------------------------------------------- 6
Outcome quadrant_union_collapse() {
    const PolyhedralCone q1 = PolyhedralCone::nonnegative_orthant(2);
    const UnionSet u = UnionSet::make({q1, q1.negate()}, zero_vec(2));
    if (clarke_tangent_cone(u) != PolyhedralCone::zero(2))
        return fail("Clarke cone of Q1 union Q3 is not {0}");
    const MembershipOracle o = MembershipOracle::from_union_set(u, "q1-union-q3");
    for (const Vec& v : direction_grid_64()) {
        const OracleParams params{Rat(1, 16), Rat(1, 8), Rat(1, 16), 500, 606};
        const OracleVerdict verdict = check_clarke_membership(o, u.basepoint, v, params);
        if (!verdict.failed() || !verdict.counterexample)
            return fail("no counterexample for direction (" + to_string(v[0]) + ", " +
                        to_string(v[1]) + ")");
    }
    return pass("Clarke cone is {0}; all 64 nonzero directions refuted with triples");
}

// ---------------------------------------------------------------- 7
Outcome nonclosed_sum_evidence() {
    const ZooCone soc = ZooCone::second_order(3);
    const ZooCone plane =
        ZooCone::subspace(3, {{Rat(1), Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)}});
    const ClosednessReport r =
        sum_closedness_probe(soc, plane, {Rat(0), Rat(-1), Rat(0)}, 10);
    if (r.status != ClosednessReport::Status::NotClosedEvidence)
        return fail("probe did not produce non-closedness evidence");
    if (r.residual_sq.size() != 10 || r.infeasibility_certificate.empty())
        return fail("evidence incomplete");
    for (std::size_t k = 1; k < 10; ++k) {
        // factor >= 2 on the residual norm is factor >= 4 in squared form
        if (4 * r.residual_sq[k] > r.residual_sq[k - 1])
            return fail("residual does not halve at step " + std::to_string(k));
        if (r.component_norm_sq[k] <= r.component_norm_sq[k - 1])
            return fail("decomposition components do not diverge at step " +
                        std::to_string(k));
    }
    return pass("residual halves for k = 1..10; divergence certificate emitted");
}

// ---------------------------------------------------------------- 8
PWAFunction random_max_affine(std::mt19937_64& g, std::size_t n) {
    std::uniform_int_distribution<int> count(2, 3);
    std::vector<AffinePiece> pieces;
    const int m = count(g);
    for (int i = 0; i < m; ++i) pieces.push_back({testutil::rand_vec(g, n, -2, 2, 2), Rat(0)});
    return PWAFunction::max_of(n, std::move(pieces));
}

Outcome sum_rule_corpus() {
    // named cases first
    const PWAFunction abs_fn =
        PWAFunction::max_of(1, {{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(0)}});
    const PWAFunction neg_abs =
        PWAFunction::neg_max_of(1, {{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(0)}});

    const SumRuleReport two_abs = sum_rule_check(abs_fn, abs_fn, {Rat(0)});
    std::vector<Vec> verts = two_abs.sum.polytope;
    std::sort(verts.begin(), verts.end(), lex_less);
    if (!two_abs.hypothesis_cone_transversal || !two_abs.hypothesis_strong ||
        !two_abs.all_decompose || verts != std::vector<Vec>{{Rat(-2)}, {Rat(2)}})
        return fail("|x| + |x| does not reproduce [-2, 2]");

    const SumRuleReport cancel = sum_rule_check(abs_fn, neg_abs, {Rat(0)});
    if (!cancel.hypothesis_cone_transversal || !cancel.hypothesis_strong ||
        !cancel.all_decompose || cancel.sum.polytope != std::vector<Vec>{{Rat(0)}} ||
        !in_convex_hull({{Rat(-2)}, {Rat(2)}}, cancel.sum.polytope[0]))
        return fail("|x| + (-|x|) does not reproduce {0} inside [-2, 2]");

    auto g = testutil::rng(108);
    int certified = 0, attempts = 0;
    while (certified < 50 && attempts < 400) {
        ++attempts;
        const std::size_t n = 1 + attempts % 2;
        const PWAFunction f1 = random_max_affine(g, n);
        const PWAFunction f2 = random_max_affine(g, n);
        const SumRuleReport r = sum_rule_check(f1, f2, zero_vec(n));
        if (!r.hypothesis_cone_transversal || !r.hypothesis_strong) continue;
        ++certified;
        if (!r.all_decompose)
            return fail("certified pair with non-decomposing vertex (attempt " +
                        std::to_string(attempts) + ")");
    }
    if (certified < 50)
        return fail("only " + std::to_string(certified) + " certified pairs in " +
                    std::to_string(attempts) + " attempts");
    return pass("50 certified pairs decompose; |x| +/- |x| reproduce [-2,2] and {0}");
}

// ---------------------------------------------------------------- 9
Outcome qualification_gallery() {
    const PWAFunction ind_right = PWAFunction::max_of(
        1, {{{Rat(0)}, Rat(0)}}, Polyhedron::from_halfspaces(1, {{{Rat(-1)}, Rat(0)}}));
    const PWAFunction ind_left = PWAFunction::max_of(
        1, {{{Rat(0)}, Rat(0)}}, Polyhedron::from_halfspaces(1, {{{Rat(1)}, Rat(0)}}));
    if (singular_qualification(ind_right, ind_left, {Rat(0)}).holds)
        return fail("opposing half-line indicators should fail qualification");

    // every real-valued pair qualifies: singular subdifferentials are {0}
    const PWAFunction abs_fn =
        PWAFunction::max_of(1, {{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(0)}});
    const PWAFunction neg_abs =
        PWAFunction::neg_max_of(1, {{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(0)}});
    if (!singular_qualification(abs_fn, neg_abs, {Rat(0)}).holds ||
        !singular_qualification(abs_fn, abs_fn, {Rat(0)}).holds)
        return fail("a real-valued named pair failed qualification");
    auto g = testutil::rng(109);
    for (int i = 0; i < 10; ++i) {
        const std::size_t n = 1 + i % 2;
        const QualificationReport q =
            singular_qualification(random_max_affine(g, n), random_max_affine(g, n),
                                   zero_vec(n));
        if (!q.holds) return fail("a real-valued random pair failed qualification");
    }
    // the gallery itself reports the same verdicts
    std::vector<TaskReport> reports =
        run_scenario(gallery("indicator-qualification-failure"), {});
    if (exit_code(reports) != 0) return fail("gallery scenario did not pass");
    return pass("indicator pair fails, all real-valued pairs qualify, gallery agrees");
}

// --------------------------------------------------------------- 10
Outcome hypertangent_lipschitz() {
    const int grid = 16;
    // exact unit directions via the rational circle parametrization
    auto unit_dir = [](const Rat& t) -> Vec {
        const Rat d = 1 + t * t;
        return {(1 - t * t) / d, 2 * t / d};
    };
    auto g = testutil::rng(110);
    const std::vector<std::pair<std::string, UnionSet>> sets = gallery_sets();
    const UnionSet* halfplane = nullptr;
    const UnionSet* wedge = nullptr;
    for (const auto& [name, u] : sets) {
        if (name == "upper") halfplane = &u;
        if (name == "wedge") wedge = &u;
    }
    if (!halfplane || !wedge) return fail("halfplane / wedge gallery sets missing");

    struct Host {
        const UnionSet* u;
        int lo, hi;  // numerator range for t = i/32 keeping the boundary
                     // distance above the 1/grid floor
    };
    for (const Host& host : {Host{halfplane, 3, 127}, Host{wedge, 3, 10}}) {
        std::uniform_int_distribution<int> pick(host.lo, host.hi);
        for (int s = 0; s < 50; ++s) {
            const Vec v = unit_dir(Rat(pick(g), 32));
            const Vec w = unit_dir(Rat(pick(g), 32));
            Rat ev, ew;
            try {
                ev = hypertangent_epsilon(*host.u, v, grid);
                ew = hypertangent_epsilon(*host.u, w, grid);
            } catch (const NotHypertangent&) {
                return fail("an interior direction was not hypertangent");
            }
            const Rat dist_ub = sqrt_upper(norm_sq(sub(v, w)));
            if (ew + dist_ub + Rat(1, grid) < ev || ev + dist_ub + Rat(1, grid) < ew)
                return fail("Lipschitz bound violated on sample " + std::to_string(s));
        }
    }
    return pass("100 random direction pairs within one 1/16 grid step on both hosts");
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"polar sandwich inclusions", 60, polar_sandwich_corpus},
        {"polar involution and sum-polar duality", 60, polar_involution_duality},
        {"normal-cone decomposition under transversality", 120, normal_decomposition_corpus},
        {"two-point decrease witnesses", 120, witness_decrease_corpus},
        {"Clarke cone exact vs sampling oracle", 300, clarke_exact_vs_oracle},
        {"quadrant-union Clarke collapse", 30, quadrant_union_collapse},
        {"non-closed polar sum evidence", 30, nonclosed_sum_evidence},
        {"subdifferential sum rule corpus", 120, sum_rule_corpus},
        {"singular qualification", 10, qualification_gallery},
        {"hypertangent radius is 1-Lipschitz", 60, hypertangent_lipschitz},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = o.passed && secs <= c.budget_s;
        if (!ok) ++failures;
        std::printf("[%2zu/10] %s  %-47s  %s (%.1fs / %.0fs)\n", i + 1,
                    ok ? "PASS" : "FAIL", c.name, o.note.c_str(), secs, c.budget_s);
        std::fflush(stdout);
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
