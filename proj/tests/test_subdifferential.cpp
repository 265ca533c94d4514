#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/subdiff.hpp"
#include "test_util.hpp"

#include <algorithm>

using namespace conelab;

namespace {

PWAFunction abs_fn() {
    return PWAFunction::max_of(1, {{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(0)}});
}

PWAFunction neg_abs_fn() {
    return PWAFunction::neg_max_of(1, {{{Rat(1)}, Rat(0)}, {{Rat(-1)}, Rat(0)}});
}

PWAFunction zero_fn(std::size_t n) { return PWAFunction::max_of(n, {{zero_vec(n), Rat(0)}}); }

PWAFunction indicator(Polyhedron p) {
    const std::size_t n = p.dim();
    return PWAFunction::max_of(n, {{zero_vec(n), Rat(0)}}, std::move(p));
}

Polyhedron halfline_ge(const Rat& sign) {
    // {x : sign * x >= 0} in one dimension
    return Polyhedron::from_halfspaces(1, {{{Rat(-sign)}, Rat(0)}});
}

std::vector<Vec> sorted(std::vector<Vec> v) {
    std::sort(v.begin(), v.end(), lex_less);
    return v;
}

bool same_hull(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    for (const Vec& p : a)
        if (!in_convex_hull(b, p)) return false;
    for (const Vec& p : b)
        if (!in_convex_hull(a, p)) return false;
    return true;
}

// random real-valued max-affine function in n variables
PWAFunction random_max_affine(std::mt19937_64& g, std::size_t n, int pieces) {
    std::vector<AffinePiece> ps;
    for (int i = 0; i < pieces; ++i) {
        ps.push_back({testutil::rand_vec(g, n, -2, 2), testutil::rand_rat(g, 0, 1)});
    }
    // at least one piece passes through the origin value 0 so that the
    // function is active there in interesting ways
    ps[0].offset = Rat(0);
    return PWAFunction::max_of(n, std::move(ps));
}

} // namespace

TEST_CASE("pwa values and validation") {
    PWAFunction f = abs_fn();
    CHECK(f.value({Rat(3, 2)}) == Rat(3, 2));
    CHECK(f.value({Rat(-2, 3)}) == Rat(2, 3));
    CHECK(f.value({Rat(0)}) == Rat(0));

    PWAFunction g = neg_abs_fn();
    CHECK(g.value({Rat(3, 2)}) == Rat(-3, 2));
    CHECK(g.value({Rat(-2, 3)}) == Rat(-2, 3));

    PWAFunction h = indicator(halfline_ge(Rat(1)));
    CHECK(h.value({Rat(1)}) == Rat(0));
    CHECK_THROWS_AS(h.value({Rat(-1)}), PointOutsideDomain);

    CHECK(f.scaled(Rat(3)).value({Rat(-2)}) == Rat(6));
    CHECK_THROWS_AS(f.scaled(Rat(0)), InputError);
    CHECK_THROWS_AS(PWAFunction::max_of(1, {}), InputError);
    CHECK_THROWS_AS(PWAFunction::max_of(2, {{{Rat(1)}, Rat(0)}}), InputError);
    // empty domain makes the function improper
    CHECK_THROWS_AS(
        PWAFunction::max_of(1, {{{Rat(1)}, Rat(0)}},
                            Polyhedron::from_halfspaces(
                                1, {{{Rat(1)}, Rat(-1)}, {{Rat(-1)}, Rat(-1)}})),
        InputError);
}

TEST_CASE("affine regions agree with direct evaluation") {
    auto g = testutil::rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 1 + trial % 2;
        PWAFunction f = random_max_affine(g, n, 3);
        std::vector<AffineRegion> regions = affine_regions(f);
        REQUIRE(!regions.empty());
        for (int s = 0; s < 10; ++s) {
            Vec x = testutil::rand_vec(g, n, -2, 2, 8);
            CHECK(region_value(regions, x) == f.value(x));
        }
    }
    // min-type functions negate the attained piece
    std::vector<AffineRegion> regions = affine_regions(neg_abs_fn());
    REQUIRE(regions.size() == 2);
    for (const Rat& x : {Rat(1, 2), Rat(-1, 2), Rat(0)}) {
        CHECK(region_value(regions, {x}) == neg_abs_fn().value({x}));
    }
}

TEST_CASE("sum regions implement exact piece arithmetic") {
    std::vector<AffineRegion> cancel = sum_regions(abs_fn(), neg_abs_fn());
    auto g = testutil::rng(32);
    for (int s = 0; s < 20; ++s) {
        Vec x = testutil::rand_vec(g, 1, -3, 3, 16);
        CHECK(region_value(cancel, x) == Rat(0));
    }
    std::vector<AffineRegion> twice = sum_regions(abs_fn(), abs_fn());
    CHECK(region_value(twice, {Rat(-5, 4)}) == Rat(5, 2));

    CHECK_THROWS_AS(sum_regions(abs_fn(), zero_fn(2)), InputError);
    // domains intersect in the sum
    std::vector<AffineRegion> gated =
        sum_regions(abs_fn(), indicator(halfline_ge(Rat(1))));
    CHECK(region_value(gated, {Rat(2)}) == Rat(2));
    CHECK_THROWS_AS(region_value(gated, {Rat(-1)}), PointOutsideDomain);
}

TEST_CASE("epigraph at a point is the expected local cone model") {
    // f = 0: one piece, the upper halfplane
    UnionSet e0 = epigraph_at(zero_fn(1), {Rat(0)});
    REQUIRE(e0.pieces.size() == 1);
    CHECK(e0.pieces[0] ==
          PolyhedralCone::from_halfspace_normals(2, {{Rat(0), Rat(-1)}}));

    // |x| at the kink: two quarter-plane pieces
    UnionSet ea = epigraph_at(abs_fn(), {Rat(0)});
    CHECK(ea.pieces.size() == 2);
    CHECK(ea.basepoint == Vec{Rat(0), Rat(0)});
    CHECK(ea.contains({Rat(1), Rat(1)}));
    CHECK(ea.contains({Rat(-1), Rat(2)}));
    CHECK(!ea.contains({Rat(1), Rat(1, 2)}));

    // |x| at a smooth point: a single halfplane {r >= d}
    UnionSet es = epigraph_at(abs_fn(), {Rat(1)});
    REQUIRE(es.pieces.size() == 1);
    CHECK(es.pieces[0] ==
          PolyhedralCone::from_halfspace_normals(2, {{Rat(1), Rat(-1)}}));
    CHECK(es.basepoint == Vec{Rat(1), Rat(1)});

    CHECK_THROWS_AS(epigraph_at(indicator(halfline_ge(Rat(1))), {Rat(-1)}),
                    PointOutsideDomain);
}

TEST_CASE("clarke subdifferential: named one-dimensional examples") {
    SubdifferentialSet s = clarke_subdifferential(abs_fn(), {Rat(0)});
    CHECK(sorted(s.polytope) == std::vector<Vec>{{Rat(-1)}, {Rat(1)}});
    CHECK(s.singular_cone.is_zero_cone());
    CHECK(s.contains({Rat(1, 3)}));
    CHECK(!s.contains({Rat(5, 4)}));

    PWAFunction two_slopes =
        PWAFunction::max_of(1, {{{Rat(1)}, Rat(0)}, {{Rat(2)}, Rat(0)}});
    SubdifferentialSet t = clarke_subdifferential(two_slopes, {Rat(0)});
    CHECK(sorted(t.polytope) == std::vector<Vec>{{Rat(1)}, {Rat(2)}});

    // the concave counterpart has the same Clarke hull at the kink
    SubdifferentialSet u = clarke_subdifferential(neg_abs_fn(), {Rat(0)});
    CHECK(sorted(u.polytope) == std::vector<Vec>{{Rat(-1)}, {Rat(1)}});
    CHECK(u.singular_cone.is_zero_cone());

    // smooth points give the single gradient
    CHECK(clarke_subdifferential(neg_abs_fn(), {Rat(1)}).polytope ==
          std::vector<Vec>{{Rat(-1)}});
}

TEST_CASE("gradient-limit oracle matches the epigraph computation for -|x|") {
    PWAFunction f = neg_abs_fn();
    std::vector<AffineRegion> regions = affine_regions(f);
    // gradients at differentiable points approaching 0, by exact
    // difference quotients taken inside one region
    std::vector<Vec> limits;
    for (int k = 1; k <= 4; ++k) {
        for (const Rat& x : {Rat(1, k), Rat(-1, k)}) {
            const Rat h(1, 10 * k);
            Vec grad{(f.value({x + h}) - f.value({x})) / h};
            if (std::find(limits.begin(), limits.end(), grad) == limits.end())
                limits.push_back(grad);
        }
    }
    SubdifferentialSet s = clarke_subdifferential(f, {Rat(0)});
    CHECK(same_hull(limits, s.polytope));
}

TEST_CASE("active-gradient hull crosscheck for convex max-affine functions") {
    // three planes meeting at (1/6, 1/6)
    PWAFunction f = PWAFunction::max_of(2, {{{Rat(1), Rat(1)}, Rat(0)},
                                            {{Rat(2), Rat(0)}, Rat(0)},
                                            {{Rat(0), Rat(-1)}, Rat(1, 2)}});
    Vec x0{Rat(1, 6), Rat(1, 6)};
    std::vector<Vec> active;
    for (const AffinePiece& p : f.pieces()) {
        if (dot(p.gradient, x0) + p.offset == f.value(x0)) active.push_back(p.gradient);
    }
    REQUIRE(active.size() == 3);
    SubdifferentialSet s = clarke_subdifferential(f, x0);
    CHECK(same_hull(active, s.polytope));
    CHECK(s.singular_cone.is_zero_cone());
}

TEST_CASE("indicators: subdifferential slices and singular cones") {
    PWAFunction ind = indicator(halfline_ge(Rat(1)));
    SubdifferentialSet s = clarke_subdifferential(ind, {Rat(0)});
    CHECK(s.polytope == std::vector<Vec>{{Rat(0)}});
    CHECK(s.singular_cone == PolyhedralCone::ray({Rat(-1)}));
    CHECK(s.contains({Rat(-7)}));
    CHECK(!s.contains({Rat(1, 8)}));

    // f = g + indicator(P): the singular part is the normal cone of P
    PWAFunction mixed = PWAFunction::max_of(
        1, {{{Rat(1)}, Rat(0)}, {{Rat(2)}, Rat(0)}}, halfline_ge(Rat(1)));
    SubdifferentialSet m = clarke_subdifferential(mixed, {Rat(0)});
    PolyhedralCone normal_p = polar(polyhedron_tangent_cone(halfline_ge(Rat(1)), {Rat(0)}));
    CHECK(m.singular_cone == normal_p);
}

TEST_CASE("singular qualification") {
    PWAFunction left = indicator(halfline_ge(Rat(-1)));
    PWAFunction right = indicator(halfline_ge(Rat(1)));

    QualificationReport bad = singular_qualification(right, left, {Rat(0)});
    CHECK(!bad.holds);
    CHECK(bad.meet == PolyhedralCone::ray({Rat(-1)}));

    QualificationReport good = singular_qualification(right, abs_fn(), {Rat(0)});
    CHECK(good.holds);
    CHECK(good.singular_2.is_zero_cone());

    QualificationReport finite = singular_qualification(abs_fn(), neg_abs_fn(), {Rat(0)});
    CHECK(finite.holds);
    CHECK(finite.singular_1.is_zero_cone());
    CHECK(finite.singular_2.is_zero_cone());
}

TEST_CASE("scalar consistency of the subdifferential") {
    auto check_scaling = [](const PWAFunction& f, const Vec& x0, const Rat& c) {
        SubdifferentialSet s = clarke_subdifferential(f, x0);
        SubdifferentialSet cs = clarke_subdifferential(f.scaled(c), x0);
        std::vector<Vec> expected;
        for (const Vec& v : s.polytope) expected.push_back(scale(c, v));
        CHECK(sorted(cs.polytope) == sorted(expected));
    };
    check_scaling(abs_fn(), {Rat(0)}, Rat(3));
    check_scaling(neg_abs_fn(), {Rat(0)}, Rat(5, 2));
    check_scaling(PWAFunction::max_of(2, {{{Rat(1), Rat(1)}, Rat(0)},
                                          {{Rat(-1), Rat(2)}, Rat(0)}}),
                  zero_vec(2), Rat(7, 3));
}

TEST_CASE("epigraph lift: free coordinates and basepoint") {
    EpigraphLift lift = epigraph_lift(zero_fn(1), zero_fn(1), {Rat(2)});
    CHECK(lift.basepoint == Vec{Rat(2), Rat(0), Rat(0)});
    REQUIRE(lift.c1.pieces.size() == 1);
    // c1 = {r1 >= 0} with a full line in r2
    CHECK(lift.c1.pieces[0] ==
          PolyhedralCone::from_halfspace_normals(3, {{Rat(0), Rat(-1), Rat(0)}}));
    CHECK(lift.c2.pieces[0] ==
          PolyhedralCone::from_halfspace_normals(3, {{Rat(0), Rat(0), Rat(-1)}}));

    EpigraphLift la = epigraph_lift(abs_fn(), zero_fn(1), {Rat(0)});
    CHECK(la.c1.pieces.size() == 2);
    // the r2 direction is free in every c1 piece
    for (const PolyhedralCone& p : la.c1.pieces) {
        CHECK(p.contains({Rat(0), Rat(0), Rat(5)}));
        CHECK(p.contains({Rat(0), Rat(0), Rat(-5)}));
    }
    CHECK_THROWS_AS(epigraph_lift(indicator(halfline_ge(Rat(1))), zero_fn(1), {Rat(-1)}),
                    PointOutsideDomain);
}

TEST_CASE("sum rule: |x| plus -|x| cancels and decomposes") {
    SumRuleReport rep = sum_rule_check(abs_fn(), neg_abs_fn(), {Rat(0)});
    CHECK(rep.hypothesis_cone_transversal);
    CHECK(rep.hypothesis_strong);
    CHECK(rep.sum.polytope == std::vector<Vec>{{Rat(0)}});
    CHECK(rep.all_decompose);
    REQUIRE(rep.entries.size() == 1);
    const auto& e = rep.entries[0];
    CHECK(e.decomposes);
    CHECK(add(e.s1, e.s2) == e.vertex);
    CHECK(rep.part_1.contains(e.s1));
    CHECK(rep.part_2.contains(e.s2));
}

TEST_CASE("sum rule: |x| plus |x| is tight") {
    SumRuleReport rep = sum_rule_check(abs_fn(), abs_fn(), {Rat(0)});
    CHECK(rep.hypothesis_cone_transversal);
    CHECK(rep.hypothesis_strong);
    CHECK(sorted(rep.sum.polytope) == std::vector<Vec>{{Rat(-2)}, {Rat(2)}});
    CHECK(rep.all_decompose);
    for (const auto& e : rep.entries) {
        CHECK(add(e.s1, e.s2) == e.vertex);
        CHECK(rep.part_1.contains(e.s1));
        CHECK(rep.part_2.contains(e.s2));
    }
}

TEST_CASE("sum rule: adding zero is the identity decomposition") {
    SumRuleReport rep = sum_rule_check(abs_fn(), zero_fn(1), {Rat(0)});
    CHECK(rep.all_decompose);
    CHECK(sorted(rep.sum.polytope) == sorted(rep.part_1.polytope));
    for (const auto& e : rep.entries) {
        CHECK(e.s2 == Vec{Rat(0)});  // the only member of the zero subdifferential
        CHECK(e.s1 == e.vertex);
    }
}

TEST_CASE("intermediate inclusions of the lifted construction") {
    CHECK(intermediate_inclusion_check(abs_fn(), zero_fn(1), {Rat(0)}).all_passed());
    CHECK(intermediate_inclusion_check(abs_fn(), neg_abs_fn(), {Rat(0)}).all_passed());
    CHECK(intermediate_inclusion_check(zero_fn(1), zero_fn(1), {Rat(0)}).all_passed());

    // for f1 = f2 = 0 the lifted sum normal cone is the ray (0, -1, -1):
    // the symmetric lift of the epigraph normal ray (0, -1)
    UnionSet epi = epigraph_at(sum_regions(zero_fn(1), zero_fn(1)), {Rat(0)});
    CHECK(clarke_normal_cone(epi) == PolyhedralCone::ray({Rat(0), Rat(-1)}));
}

TEST_CASE("randomized corpus: certified hypotheses force decomposition") {
    auto g = testutil::rng(47);
    int checked = 0;
    for (int trial = 0; trial < 12 && checked < 8; ++trial) {
        std::size_t n = 1 + trial % 2;
        PWAFunction f1 = random_max_affine(g, n, 2 + trial % 2);
        PWAFunction f2 = random_max_affine(g, n, 2);
        SumRuleReport rep = sum_rule_check(f1, f2, zero_vec(n));
        if (!rep.hypothesis_cone_transversal || !rep.hypothesis_strong) continue;
        CHECK(rep.all_decompose);
        // real-valued functions have trivial singular parts
        CHECK(rep.sum.singular_cone.is_zero_cone());
        CHECK(rep.part_1.singular_cone.is_zero_cone());
        ++checked;
    }
    CHECK(checked >= 4);
}
