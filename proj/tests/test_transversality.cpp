#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/hypertangent.hpp"
#include "test_util.hpp"

using namespace conelab;

namespace {

UnionSet halfplane_host(const Rat& a, const Rat& b) {
    // {(x, y) : a x + b y <= 0}
    return UnionSet::of(PolyhedralCone::from_halfspace_normals(2, {{a, b}}), 2);
}

std::vector<OracleParams> default_rows() {
    return {{Rat(1, 4), Rat(1), Rat(1), 60, 17}};
}

// the gallery pair A = {y >= 0}, B = {y <= x} with triangle candidates
UniformTangentSetCandidate gallery_d_a() {
    return certify_uts(halfplane_host(Rat(0), Rat(-1)),
                       {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}},
                       default_rows());
}

UniformTangentSetCandidate gallery_d_b() {
    return certify_uts(halfplane_host(Rat(-1), Rat(1)),
                       {{Rat(1), Rat(1)}, {Rat(-1), Rat(-1)}, {Rat(1), Rat(-1)}},
                       default_rows());
}

} // namespace

TEST_CASE("certify_uts: exact convex path and oracle row agree") {
    UniformTangentSetCandidate d = certify_uts(
        halfplane_host(Rat(0), Rat(-1)), {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}}, default_rows());
    CHECK(d.exactly_certified());
    CHECK(d.certified());
    // the sampled row also passed
    bool sampled_pass = false;
    for (const CertificateRow& r : d.certificate_table) {
        if (!r.exact && r.passed) sampled_pass = true;
    }
    CHECK(sampled_pass);
}

TEST_CASE("certify_uts: tube containment certifies a union host") {
    // host {y >= 0} ∪ {y <= x}; D = {(1, 1/2)} points into both pieces'
    // common interior region and admits an exact tube
    UnionSet host = UnionSet::make({PolyhedralCone::from_halfspace_normals(2, {{Rat(0), Rat(-1)}}),
                                    PolyhedralCone::from_halfspace_normals(2, {{Rat(-1), Rat(1)}})},
                                   zero_vec(2));
    UniformTangentSetCandidate d = certify_uts(host, {{Rat(1), Rat(1, 2)}}, default_rows());
    CHECK(d.exactly_certified());
}

TEST_CASE("uts calculus: scaling, subsets, unions, closure, truncation") {
    UniformTangentSetCandidate d = certify_uts(
        halfplane_host(Rat(0), Rat(-1)), {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}}, default_rows());
    UniformTangentSetCandidate d_sub = certify_uts(
        halfplane_host(Rat(0), Rat(-1)), {{Rat(0), Rat(1, 2)}}, default_rows());
    PropertyReport rep = uts_calculus_check(d, d_sub, Rat(2));
    CHECK(rep.all_passed());
    CHECK(rep.items.size() == 5);  // includes the convex truncation item

    CHECK_THROWS_AS(uts_calculus_check(d, d_sub, Rat(0)), InputError);
}

TEST_CASE("strong transversality: gallery pair certifies") {
    StrongTransversalityResult r = strong_transversality(gallery_d_a(), gallery_d_b());
    REQUIRE(std::holds_alternative<TransversalityCertificate>(r));
    const auto& cert = std::get<TransversalityCertificate>(r);
    CHECK(cert.rho_squared > 0);
    CHECK(!cert.difference_hull.empty());
}

TEST_CASE("strong transversality: identical segments degenerate") {
    UniformTangentSetCandidate d = certify_uts(
        halfplane_host(Rat(0), Rat(-1)), {{Rat(0), Rat(0)}, {Rat(0), Rat(1)}}, default_rows());
    StrongTransversalityResult r = strong_transversality(d, d);
    REQUIRE(std::holds_alternative<NotCertified>(r));
}

TEST_CASE("strong transversality: opposing halfplanes yield the witness {-y <= 0}") {
    UniformTangentSetCandidate d_a = certify_uts(
        halfplane_host(Rat(0), Rat(-1)),
        {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}}, default_rows());
    UniformTangentSetCandidate d_b = certify_uts(
        halfplane_host(Rat(0), Rat(1)),
        {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(-1)}}, default_rows());
    StrongTransversalityResult r = strong_transversality(d_a, d_b);
    REQUIRE(std::holds_alternative<NotCertified>(r));
    const auto& nc = std::get<NotCertified>(r);
    REQUIRE(nc.witness.has_value());
    CHECK(nc.witness->normal == Vec{Rat(0), Rat(-1)});
}

TEST_CASE("strong certificate implies cone transversality") {
    StrongTransversalityResult r = strong_transversality(gallery_d_a(), gallery_d_b());
    REQUIRE(std::holds_alternative<TransversalityCertificate>(r));
    PolyhedralCone ta = clarke_tangent_cone(gallery_d_a().host);
    PolyhedralCone tb = clarke_tangent_cone(gallery_d_b().host);
    CHECK(transversality_radius(ta, tb).transversal);
}

TEST_CASE("witness search: proposition constants, eta = 1 - 3 eps") {
    auto cert = std::get<TransversalityCertificate>(
        strong_transversality(gallery_d_a(), gallery_d_b()));
    WitnessRecord rec = witness_search(cert, {Rat(0), Rat(1, 10)}, {Rat(1, 10), Rat(0)},
                                       Rat(1, 10));
    CHECK(rec.eta == Rat(7, 10));
    CHECK(rec.decrease == rec.t * Rat(7, 10));
    CHECK(rec.t > 0);
    // realized points stay in the hosts
    CHECK(cert.d_a.host.contains(add(rec.x_a, scale(rec.t, rec.w_a))));
    CHECK(cert.d_b.host.contains(add(rec.x_b, scale(rec.t, rec.w_b))));
    // norm bounds in squared form
    CHECK(norm_sq(rec.w_a) <= rec.M * rec.M);
    CHECK(norm_sq(rec.w_b) <= rec.M * rec.M);
    // decrease inequality re-verified here in exact squared form
    const Vec u = sub(rec.x_a, rec.x_b);
    const Rat q = norm_sq(u);
    const Rat after = norm_sq(add(u, scale(rec.t, sub(rec.w_a, rec.w_b))));
    CHECK(le_mul_sqrt(2 * rec.t * rec.eta, q,
                      q + rec.t * rec.t * rec.eta * rec.eta - after));
}

TEST_CASE("witness search: preconditions") {
    auto cert = std::get<TransversalityCertificate>(
        strong_transversality(gallery_d_a(), gallery_d_b()));
    Vec p{Rat(0), Rat(1, 10)};
    CHECK_THROWS_AS(witness_search(cert, p, p, Rat(1, 10)), InputError);
    CHECK_THROWS_AS(witness_search(cert, p, {Rat(1, 10), Rat(0)}, Rat(1, 2)), InputError);
    CHECK_THROWS_AS(witness_search(cert, p, {Rat(1, 10), Rat(0)}, Rat(0)), InputError);
    // x_b outside host B = {y <= x}
    CHECK_THROWS_AS(witness_search(cert, p, {Rat(-1), Rat(1)}, Rat(1, 10)), InputError);
}

TEST_CASE("witness search succeeds on sampled pairs near the basepoint") {
    auto cert = std::get<TransversalityCertificate>(
        strong_transversality(gallery_d_a(), gallery_d_b()));
    auto g = testutil::rng(71);
    int done = 0;
    while (done < 20) {
        Vec xa = testutil::rand_vec(g, 2, -1, 1, 8);
        Vec xb = testutil::rand_vec(g, 2, -1, 1, 8);
        if (!cert.d_a.host.contains(xa) || !cert.d_b.host.contains(xb) || xa == xb) continue;
        WitnessRecord rec = witness_search(cert, xa, xb, Rat(1, 10));
        CHECK(rec.eta == Rat(7, 10));
        ++done;
    }
}

TEST_CASE("uts intersection check") {
    auto cert = std::get<TransversalityCertificate>(
        strong_transversality(gallery_d_a(), gallery_d_b()));
    // co{(1,0),(1,1)} scaled by 1/4 sits inside both candidates
    PropertyReport rep =
        uts_intersection_check(cert, {{Rat(1, 4), Rat(0)}, {Rat(1, 4), Rat(1, 4)}});
    CHECK(rep.all_passed());

    CHECK(uts_intersection_check(cert, {zero_vec(2)}).all_passed());
    CHECK(uts_intersection_check(cert, {}).all_passed());

    // a point outside D_B fails the precondition item
    PropertyReport bad = uts_intersection_check(cert, {{Rat(0), Rat(1)}});
    CHECK(!bad.all_passed());
}

TEST_CASE("hypertangent radius: halfplane directions") {
    UnionSet hp = halfplane_host(Rat(0), Rat(-1));
    CHECK(hypertangent_epsilon(hp, {Rat(0), Rat(1)}, 4) >= Rat(1, 2));
    CHECK_THROWS_AS(hypertangent_epsilon(hp, {Rat(0), Rat(-1)}, 16), NotHypertangent);
    // boundary direction: no ball fits
    CHECK_THROWS_AS(hypertangent_epsilon(hp, {Rat(1), Rat(0)}, 16), NotHypertangent);
}

TEST_CASE("hypertangent radius is 1-Lipschitz within one grid step") {
    const int grid = 16;
    std::vector<Vec> dirs = {{Rat(0), Rat(1)},
                             {Rat(3, 5), Rat(4, 5)},
                             {Rat(-3, 5), Rat(4, 5)},
                             {Rat(5, 13), Rat(12, 13)},
                             {Rat(-5, 13), Rat(12, 13)}};
    for (const UnionSet& host :
         {halfplane_host(Rat(0), Rat(-1)),
          UnionSet::of(PolyhedralCone::from_halfspace_normals(
                           2, {{Rat(0), Rat(-1)}, {Rat(-1), Rat(-1)}}),
                       2)}) {
        for (const Vec& v : dirs) {
            for (const Vec& w : dirs) {
                Rat ev, ew;
                try {
                    ev = hypertangent_epsilon(host, v, grid);
                    ew = hypertangent_epsilon(host, w, grid);
                } catch (const NotHypertangent&) {
                    continue;
                }
                const Rat dist_ub = sqrt_upper(norm_sq(sub(v, w)));
                CHECK(ew + dist_ub + Rat(1, grid) >= ev);
            }
        }
    }
}

TEST_CASE("open uniform tangent set from hypertangent directions") {
    UnionSet hp = halfplane_host(Rat(0), Rat(-1));
    std::vector<Vec> dirs;
    for (int i = -3; i <= 3; ++i) dirs.push_back({Rat(i, 4), Rat(1)});
    dirs.push_back({Rat(0), Rat(2)});
    UniformTangentSetCandidate cand = open_uts_from_hypertangents(hp, dirs, 8);
    CHECK(cand.certified());
    CHECK(cand.polytope.size() == dirs.size());
    PolyhedralCone hull = PolyhedralCone::from_generators(2, cand.polytope);
    CHECK(clarke_tangent_cone(hp).contains(hull));

    // single direction
    CHECK(open_uts_from_hypertangents(hp, {{Rat(0), Rat(1)}}, 8).certified());

    // Q1 ∪ Q3: interior of the Clarke cone is empty, nothing is hypertangent
    PolyhedralCone q1 = PolyhedralCone::nonnegative_orthant(2);
    UnionSet q13 = UnionSet::make({q1, q1.negate()}, zero_vec(2));
    CHECK_THROWS_AS(open_uts_from_hypertangents(q13, {{Rat(1), Rat(1)}}, 8), NotHypertangent);
    CHECK_THROWS_AS(open_uts_from_hypertangents(q13, {{Rat(1), Rat(0)}}, 8), NotHypertangent);
}
