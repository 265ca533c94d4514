#include "conelab/scenario.hpp"

#include "conelab/oracle.hpp"

#include <chrono>
#include <set>

namespace conelab {

namespace {

const std::set<std::string> known_ops = {
    "clarke-tangent-cone",  "clarke-membership", "tangential-intersection",
    "normal-intersection",  "strong-transversality", "witness-search",
    "sum-closedness",       "sum-rule",          "qualification",
};

std::string task_field(std::size_t i) { return "tasks[" + std::to_string(i) + "]"; }

const Json& arg(const Json& args, const std::string& key, const std::string& field) {
    auto it = args.find(key);
    if (it == args.end()) throw SchemaError(field + "." + key, "missing field");
    return *it;
}

std::string name_arg(const Json& args, const std::string& key, const std::string& field) {
    const Json& v = arg(args, key, field);
    if (!v.is_string()) throw SchemaError(field + "." + key, "expected a name string");
    return v.get<std::string>();
}

const UnionSet& resolve_set(const Scenario& s, const Json& args, const std::string& key,
                            const std::string& field) {
    const std::string name = name_arg(args, key, field);
    auto it = s.sets.find(name);
    if (it == s.sets.end())
        throw SchemaError(field + "." + key, "unknown set '" + name + "'");
    return it->second;
}

const PWAFunction& resolve_fn(const Scenario& s, const Json& args, const std::string& key,
                              const std::string& field) {
    const std::string name = name_arg(args, key, field);
    auto it = s.functions.find(name);
    if (it == s.functions.end())
        throw SchemaError(field + "." + key, "unknown function '" + name + "'");
    return it->second;
}

Rat rat_arg_or(const Json& args, const std::string& key, const Rat& fallback,
               const std::string& field) {
    auto it = args.find(key);
    return it == args.end() ? fallback : rat_from_json(*it, field + "." + key);
}

int int_arg_or(const Json& args, const std::string& key, int fallback,
               const std::string& field) {
    auto it = args.find(key);
    if (it == args.end()) return fallback;
    if (!it->is_number_integer() || it->get<int>() <= 0)
        throw SchemaError(field + "." + key, "expected a positive integer");
    return it->get<int>();
}

std::string choice_arg(const Json& args, const std::string& key,
                       const std::vector<std::string>& allowed, const std::string& field) {
    const Json& v = arg(args, key, field);
    if (v.is_string()) {
        for (const std::string& a : allowed) {
            if (v == a) return a;
        }
    }
    std::string what = "expected one of";
    for (const std::string& a : allowed) what += " \"" + a + "\"";
    throw SchemaError(field + "." + key, what);
}

ZooCone zoo_from_json(const Json& j, const std::string& field) {
    const std::string kind = choice_arg(j, "kind", {"soc", "ray", "subspace", "polyhedral"},
                                        field);
    try {
        if (kind == "soc") {
            const Json& d = arg(j, "dim", field);
            if (!d.is_number_integer() || d.get<long long>() < 2)
                throw SchemaError(field + ".dim", "expected an integer >= 2");
            return ZooCone::second_order(d.get<std::size_t>());
        }
        if (kind == "ray")
            return ZooCone::ray(vec_from_json(arg(j, "dir", field), field + ".dir"));
        if (kind == "subspace") {
            const Json& d = arg(j, "dim", field);
            if (!d.is_number_integer() || d.get<long long>() <= 0)
                throw SchemaError(field + ".dim", "expected a positive integer");
            const std::size_t n = d.get<std::size_t>();
            const Json& basis = arg(j, "basis", field);
            if (!basis.is_array()) throw SchemaError(field + ".basis", "expected an array");
            std::vector<Vec> b;
            for (std::size_t i = 0; i < basis.size(); ++i)
                b.push_back(vec_from_json(basis[i], field + ".basis[" + std::to_string(i) + "]"));
            return ZooCone::subspace(n, std::move(b));
        }
        return ZooCone::polyhedral(cone_from_json(arg(j, "cone", field), field + ".cone"));
    } catch (const SchemaError&) {
        throw;
    } catch (const InputError& e) {
        throw SchemaError(field, e.what());
    }
}

Json vecs_to_json(const std::vector<Vec>& vs) {
    Json out = Json::array();
    for (const Vec& v : vs) out.push_back(vec_to_json(v));
    return out;
}

std::vector<Vec> vecs_arg(const Json& args, const std::string& key, std::size_t n,
                          const std::string& field) {
    const Json& j = arg(args, key, field);
    const std::string f = field + "." + key;
    if (!j.is_array() || j.empty()) throw SchemaError(f, "expected a nonempty array");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Vec v = vec_from_json(j[i], f + "[" + std::to_string(i) + "]");
        if (v.size() != n)
            throw SchemaError(f + "[" + std::to_string(i) + "]",
                              "expected dimension " + std::to_string(n));
        out.push_back(std::move(v));
    }
    return out;
}

Json rats_to_json(const std::vector<Rat>& xs) {
    Json out = Json::array();
    for (const Rat& x : xs) out.push_back(rat_to_json(x));
    return out;
}

double rat_approx(const Rat& x) { return x.convert_to<double>(); }

/// Exact check of the two-point decrease
///   |x_a - x_b + t (w_a - w_b)|^2 <= (|x_a - x_b| - t eta)^2,
/// rearranged to avoid the square root.
bool witness_decrease_holds(const WitnessRecord& r) {
    const Rat gap_sq = norm_sq(sub(r.x_a, r.x_b));
    const Rat lhs = norm_sq(add(sub(r.x_a, r.x_b), scale(r.t, sub(r.w_a, r.w_b))));
    const Rat teta = r.t * r.eta;
    return le_mul_sqrt(2 * teta, gap_sq, gap_sq + teta * teta - lhs);
}

struct TaskContext {
    const Scenario& s;
    const Json& args;
    std::string field;
    std::uint64_t seed;
};

UniformTangentSetCandidate certify_candidate(const UnionSet& host, std::vector<Vec> verts,
                                             std::uint64_t seed) {
    return certify_uts(host, std::move(verts),
                       {{Rat(1, 8), Rat(1), Rat(1, 2), 40, seed}});
}

void run_clarke_tangent_cone(TaskContext ctx, TaskReport& rep) {
    const UnionSet& u = resolve_set(ctx.s, ctx.args, "set", ctx.field);
    const PolyhedralCone t = clarke_tangent_cone(u);
    rep.details["cone"] = cone_to_json(t);
    if (ctx.args.contains("expect")) {
        const PolyhedralCone want = cone_from_json(ctx.args["expect"], ctx.field + ".expect");
        const bool ok = t == want;
        rep.outcome = ok ? TaskOutcome::Pass : TaskOutcome::Fail;
        rep.details["matches_expectation"] = ok;
        rep.text = ok ? "Clarke tangent cone matches the expected cone"
                      : "Clarke tangent cone differs from the expected cone";
    } else {
        rep.outcome = TaskOutcome::Demo;
        rep.text = "Clarke tangent cone computed";
    }
}

void run_clarke_membership(TaskContext ctx, TaskReport& rep) {
    const UnionSet& u = resolve_set(ctx.s, ctx.args, "set", ctx.field);
    const Vec v = vec_from_json(arg(ctx.args, "direction", ctx.field),
                                ctx.field + ".direction");
    if (v.size() != u.dim())
        throw SchemaError(ctx.field + ".direction", "dimension mismatch with the set");
    const std::string expect =
        choice_arg(ctx.args, "expect", {"member", "refuted"}, ctx.field);

    const bool member = clarke_tangent_cone(u).contains(v);
    OracleParams params;
    params.eps = rat_arg_or(ctx.args, "eps", Rat(1, 16), ctx.field);
    params.delta = rat_arg_or(ctx.args, "delta", Rat(1, 8), ctx.field);
    params.lambda = rat_arg_or(ctx.args, "lambda", Rat(1, 16), ctx.field);
    params.trials = int_arg_or(ctx.args, "trials", 500, ctx.field);
    params.seed = ctx.seed;
    const MembershipOracle oracle = MembershipOracle::from_union_set(u, "scenario set");
    const OracleVerdict verdict = check_clarke_membership(oracle, u.basepoint, v, params);

    rep.details["exact_member"] = member;
    rep.details["oracle_status"] = verdict.passed()   ? "passed"
                                   : verdict.failed() ? "failed"
                                                      : "inconclusive";
    rep.details["oracle_checks"] = verdict.checks;
    if (verdict.counterexample) {
        const Counterexample& c = *verdict.counterexample;
        rep.details["counterexample"] = Json{{"x", vec_to_json(c.x)},
                                             {"v", vec_to_json(c.v)},
                                             {"t", rat_to_json(c.t)}};
    }

    const bool want_member = expect == "member";
    if (member != want_member) {
        rep.outcome = TaskOutcome::Fail;
        rep.text = std::string("exact verdict is '") + (member ? "member" : "refuted") +
                   "', contradicting the expectation";
        return;
    }
    if (member) {
        // exact membership decides; a failed oracle would expose a bug
        rep.outcome = verdict.failed() ? TaskOutcome::Fail : TaskOutcome::Pass;
        rep.text = rep.outcome == TaskOutcome::Pass
                       ? "direction is in the Clarke cone; oracle agrees"
                       : "oracle produced a counterexample for an exact member";
    } else if (verdict.failed()) {
        rep.outcome = TaskOutcome::Pass;
        rep.text = "direction refuted with an explicit counterexample triple";
    } else if (verdict.passed()) {
        rep.outcome = TaskOutcome::Fail;
        rep.text = "oracle passed a direction outside the exact Clarke cone";
    } else {
        rep.outcome = TaskOutcome::Inconclusive;
        rep.text = "direction is outside the cone but the oracle found no counterexample";
    }
}

void run_tangential_intersection(TaskContext ctx, TaskReport& rep) {
    const UnionSet& a = resolve_set(ctx.s, ctx.args, "set_a", ctx.field);
    const UnionSet& b = resolve_set(ctx.s, ctx.args, "set_b", ctx.field);
    const InclusionReport r = verify_tangential_intersection(a, b);
    rep.details["tangent_a"] = cone_to_json(r.tangent_a);
    rep.details["tangent_b"] = cone_to_json(r.tangent_b);
    rep.details["tangent_meet"] = cone_to_json(r.tangent_meet);
    if (r.violating_direction)
        rep.details["violating_direction"] = vec_to_json(*r.violating_direction);
    rep.outcome = r.holds ? TaskOutcome::Pass : TaskOutcome::Fail;
    rep.text = r.holds ? "T_A ∩ T_B ⊆ T_{A∩B} certified"
                       : "tangential intersection inclusion violated";
}

void run_normal_intersection(TaskContext ctx, TaskReport& rep) {
    const UnionSet& a = resolve_set(ctx.s, ctx.args, "set_a", ctx.field);
    const UnionSet& b = resolve_set(ctx.s, ctx.args, "set_b", ctx.field);
    const DecompositionReport r = verify_normal_intersection(a, b);
    const TransversalityRadiusResult tr =
        transversality_radius(clarke_tangent_cone(a), clarke_tangent_cone(b));

    rep.details["transversal"] = r.hypothesis_transversal;
    rep.details["rho_sq_inner"] = rat_to_json(tr.rho_sq_inner);
    rep.details["rho_sq_outer"] = rat_to_json(tr.rho_sq_outer);
    rep.details["rho_sq_inner_approx"] = rat_approx(tr.rho_sq_inner);
    if (!tr.transversal)
        rep.details["separating_halfspace"] = vec_to_json(tr.witness.normal);
    rep.details["all_decompose"] = r.all_decompose;
    Json entries = Json::array();
    for (const DecompositionReport::Entry& e : r.entries) {
        Json je{{"generator", vec_to_json(e.generator)}, {"decomposes", e.decomposes}};
        if (e.decomposes) {
            je["n_a"] = vec_to_json(e.n_a);
            je["n_b"] = vec_to_json(e.n_b);
        }
        entries.push_back(std::move(je));
    }
    rep.details["entries"] = std::move(entries);

    if (ctx.args.contains("expect_transversal")) {
        const Json& ex = ctx.args["expect_transversal"];
        if (!ex.is_boolean())
            throw SchemaError(ctx.field + ".expect_transversal", "expected a boolean");
        const bool want = ex.get<bool>();
        if (r.hypothesis_transversal != want) {
            rep.outcome = TaskOutcome::Fail;
            rep.text = want ? "pair is not transversal but was expected to be"
                            : "pair is transversal but was expected not to be";
            return;
        }
        if (want && !r.all_decompose) {
            rep.outcome = TaskOutcome::Fail;
            rep.text = "transversal pair with a non-decomposing normal generator";
            return;
        }
        rep.outcome = TaskOutcome::Pass;
        rep.text = want ? "transversal; every generator of N_{A∩B} decomposes"
                        : "non-transversality confirmed with a separating halfspace";
        return;
    }
    const bool ok = !r.hypothesis_transversal || r.all_decompose;
    rep.outcome = ok ? TaskOutcome::Pass : TaskOutcome::Fail;
    rep.text = ok ? (r.hypothesis_transversal
                         ? "transversal; every generator of N_{A∩B} decomposes"
                         : "pair is not transversal; decomposition not required")
                  : "transversal pair with a non-decomposing normal generator";
}

void run_strong_transversality(TaskContext ctx, TaskReport& rep) {
    const UnionSet& a = resolve_set(ctx.s, ctx.args, "set_a", ctx.field);
    const UnionSet& b = resolve_set(ctx.s, ctx.args, "set_b", ctx.field);
    const std::string expect =
        choice_arg(ctx.args, "expect", {"certified", "not-certified"}, ctx.field);
    const UniformTangentSetCandidate d_a =
        certify_candidate(a, vecs_arg(ctx.args, "d_a", a.dim(), ctx.field), ctx.seed);
    const UniformTangentSetCandidate d_b =
        certify_candidate(b, vecs_arg(ctx.args, "d_b", b.dim(), ctx.field), ctx.seed + 1);
    rep.exact = d_a.exactly_certified() && d_b.exactly_certified();
    if (!d_a.certified() || !d_b.certified()) {
        rep.outcome = TaskOutcome::Inconclusive;
        rep.text = "a candidate uniform tangent set failed certification";
        return;
    }
    const StrongTransversalityResult r = strong_transversality(d_a, d_b);
    const bool certified = std::holds_alternative<TransversalityCertificate>(r);
    rep.details["certified"] = certified;
    if (certified) {
        const auto& cert = std::get<TransversalityCertificate>(r);
        rep.details["rho_squared"] = rat_to_json(cert.rho_squared);
        rep.details["rho_squared_approx"] = rat_approx(cert.rho_squared);
    } else {
        const auto& nc = std::get<NotCertified>(r);
        rep.details["reason"] = nc.reason;
        if (nc.witness) rep.details["separating_halfspace"] = vec_to_json(nc.witness->normal);
    }
    const bool ok = certified == (expect == "certified");
    rep.outcome = ok ? TaskOutcome::Pass : TaskOutcome::Fail;
    rep.text = certified ? (ok ? "strong tangential transversality certified"
                               : "unexpectedly certified")
                         : (ok ? "non-certification confirmed with a separating halfspace"
                               : "certification failed unexpectedly");
}

void run_witness_search(TaskContext ctx, TaskReport& rep) {
    const UnionSet& a = resolve_set(ctx.s, ctx.args, "set_a", ctx.field);
    const UnionSet& b = resolve_set(ctx.s, ctx.args, "set_b", ctx.field);
    const UniformTangentSetCandidate d_a =
        certify_candidate(a, vecs_arg(ctx.args, "d_a", a.dim(), ctx.field), ctx.seed);
    const UniformTangentSetCandidate d_b =
        certify_candidate(b, vecs_arg(ctx.args, "d_b", b.dim(), ctx.field), ctx.seed + 1);
    rep.exact = d_a.exactly_certified() && d_b.exactly_certified();
    const StrongTransversalityResult r = strong_transversality(d_a, d_b);
    if (!std::holds_alternative<TransversalityCertificate>(r)) {
        rep.outcome = TaskOutcome::Fail;
        rep.text = "strong tangential transversality not certified; no witness to search";
        return;
    }
    const Vec x_a = vec_from_json(arg(ctx.args, "x_a", ctx.field), ctx.field + ".x_a");
    const Vec x_b = vec_from_json(arg(ctx.args, "x_b", ctx.field), ctx.field + ".x_b");
    const Rat eps = rat_arg_or(ctx.args, "epsilon", Rat(1, 10), ctx.field);
    try {
        const WitnessRecord w =
            witness_search(std::get<TransversalityCertificate>(r), x_a, x_b, eps);
        const bool ok = witness_decrease_holds(w);
        rep.details = Json{{"t", rat_to_json(w.t)},
                           {"w_a", vec_to_json(w.w_a)},
                           {"w_b", vec_to_json(w.w_b)},
                           {"decrease", rat_to_json(w.decrease)},
                           {"M", rat_to_json(w.M)},
                           {"eta", rat_to_json(w.eta)},
                           {"decrease_inequality_verified", ok}};
        rep.outcome = ok ? TaskOutcome::Pass : TaskOutcome::Fail;
        rep.text = ok ? "witness step found; decrease inequality verified exactly"
                      : "witness step violates the decrease inequality";
    } catch (const NoWitness& e) {
        rep.outcome = TaskOutcome::Fail;
        rep.details["error"] = e.what();
        rep.text = "no realizing points exist at the certified parameters";
    }
}

void run_sum_closedness(TaskContext ctx, TaskReport& rep) {
    const ZooCone z1 = zoo_from_json(arg(ctx.args, "z1", ctx.field), ctx.field + ".z1");
    const ZooCone z2 = zoo_from_json(arg(ctx.args, "z2", ctx.field), ctx.field + ".z2");
    const Vec w = vec_from_json(arg(ctx.args, "w", ctx.field), ctx.field + ".w");
    const int k_max = int_arg_or(ctx.args, "k_max", 10, ctx.field);
    const std::string expect =
        choice_arg(ctx.args, "expect", {"closed", "not-closed-evidence"}, ctx.field);

    const ClosednessReport r = sum_closedness_probe(z1, z2, w, k_max);
    switch (r.status) {
        case ClosednessReport::Status::Closed: {
            rep.details["status"] = "closed";
            rep.details["note"] = r.note;
            if (r.polar_sum) rep.details["polar_sum"] = cone_to_json(*r.polar_sum);
            const bool ok = expect == "closed";
            rep.outcome = ok ? TaskOutcome::Pass : TaskOutcome::Fail;
            rep.text = ok ? "polar sum is closed (exact polyhedral representation)"
                          : "polar sum is closed, contradicting the expectation";
            return;
        }
        case ClosednessReport::Status::NotClosedEvidence: {
            rep.details["status"] = "not-closed-evidence";
            rep.details["w"] = vec_to_json(r.w);
            rep.details["u_seq"] = vecs_to_json(r.u_seq);
            rep.details["v_seq"] = vecs_to_json(r.v_seq);
            rep.details["residual_sq"] = rats_to_json(r.residual_sq);
            rep.details["component_norm_sq"] = rats_to_json(r.component_norm_sq);
            rep.details["infeasibility_certificate"] = r.infeasibility_certificate;
            // validate the evidence: residual halves per step (factor 4 in
            // squared form), components diverge, certificate present
            bool valid = r.u_seq.size() == static_cast<std::size_t>(k_max) &&
                         !r.infeasibility_certificate.empty();
            for (std::size_t k = 0; valid && k < r.residual_sq.size(); ++k) {
                if (k > 0) {
                    valid = 4 * r.residual_sq[k] <= r.residual_sq[k - 1] &&
                            r.component_norm_sq[k] > r.component_norm_sq[k - 1];
                }
            }
            rep.details["evidence_valid"] = valid;
            if (expect != "not-closed-evidence" || !valid) {
                rep.outcome = TaskOutcome::Fail;
                rep.text = valid ? "non-closedness evidence contradicts the expectation"
                                 : "non-closedness evidence fails validation";
                return;
            }
            rep.outcome = TaskOutcome::Demo;
            rep.text = "escaping sequence emitted; residual halves per step, "
                       "decompositions diverge";
            return;
        }
        case ClosednessReport::Status::UnsupportedPair:
        default:
            rep.details["status"] = "unsupported-pair";
            rep.details["note"] = r.note;
            rep.outcome = TaskOutcome::Inconclusive;
            rep.text = "the probe cannot classify this pair";
            return;
    }
}

Json subdifferential_to_json(const SubdifferentialSet& s) {
    return Json{{"polytope", vecs_to_json(s.polytope)},
                {"singular_cone", cone_to_json(s.singular_cone)}};
}

void run_sum_rule(TaskContext ctx, TaskReport& rep) {
    const PWAFunction& f1 = resolve_fn(ctx.s, ctx.args, "f1", ctx.field);
    const PWAFunction& f2 = resolve_fn(ctx.s, ctx.args, "f2", ctx.field);
    const Vec x0 = vec_from_json(arg(ctx.args, "point", ctx.field), ctx.field + ".point");
    const SumRuleReport r = sum_rule_check(f1, f2, x0);

    rep.details["hypothesis_cone_transversal"] = r.hypothesis_cone_transversal;
    rep.details["hypothesis_strong"] = r.hypothesis_strong;
    rep.details["sum"] = subdifferential_to_json(r.sum);
    rep.details["part_1"] = subdifferential_to_json(r.part_1);
    rep.details["part_2"] = subdifferential_to_json(r.part_2);
    Json entries = Json::array();
    for (const SumRuleReport::Entry& e : r.entries) {
        Json je{{"vertex", vec_to_json(e.vertex)}, {"decomposes", e.decomposes}};
        if (e.decomposes) {
            je["s1"] = vec_to_json(e.s1);
            je["s2"] = vec_to_json(e.s2);
        }
        entries.push_back(std::move(je));
    }
    rep.details["entries"] = std::move(entries);
    rep.details["all_decompose"] = r.all_decompose;

    if (!r.hypothesis_cone_transversal || !r.hypothesis_strong) {
        rep.outcome = TaskOutcome::Inconclusive;
        rep.text = "sum-rule hypotheses not certified; decomposition not claimed";
        return;
    }
    rep.outcome = r.all_decompose ? TaskOutcome::Pass : TaskOutcome::Fail;
    rep.text = r.all_decompose
                   ? "every vertex of ∂(f1+f2) decomposes into ∂"
                     "f1 + ∂f2"
                   : "hypotheses certified but a vertex fails to decompose";
}

void run_qualification(TaskContext ctx, TaskReport& rep) {
    const PWAFunction& f1 = resolve_fn(ctx.s, ctx.args, "f1", ctx.field);
    const PWAFunction& f2 = resolve_fn(ctx.s, ctx.args, "f2", ctx.field);
    const Vec x0 = vec_from_json(arg(ctx.args, "point", ctx.field), ctx.field + ".point");
    const std::string expect = choice_arg(ctx.args, "expect", {"holds", "fails"}, ctx.field);
    const QualificationReport r = singular_qualification(f1, f2, x0);
    rep.details["holds"] = r.holds;
    rep.details["singular_1"] = cone_to_json(r.singular_1);
    rep.details["singular_2"] = cone_to_json(r.singular_2);
    rep.details["meet"] = cone_to_json(r.meet);
    const bool ok = r.holds == (expect == "holds");
    rep.outcome = ok ? TaskOutcome::Pass : TaskOutcome::Fail;
    rep.text = r.holds
                   ? (ok ? "singular subdifferentials meet only at 0"
                         : "qualification holds, contradicting the expectation")
                   : (ok ? "qualification failure confirmed (nontrivial meet)"
                         : "singular subdifferentials share a nonzero direction");
}

void check_dimensions(const Scenario& s, const RunOptions& opts) {
    for (const auto& [name, u] : s.sets) {
        if (u.dim() > opts.max_dim)
            throw InputError("set '" + name + "' exceeds the dimension cap " +
                             std::to_string(opts.max_dim));
    }
    for (const auto& [name, f] : s.functions) {
        if (f.dim() + 2 > opts.max_dim)
            throw InputError("function '" + name + "' exceeds the dimension cap " +
                             std::to_string(opts.max_dim) + " after epigraph lifting");
    }
}

} // namespace

std::string outcome_name(TaskOutcome o) {
    switch (o) {
        case TaskOutcome::Pass: return "pass";
        case TaskOutcome::Fail: return "fail";
        case TaskOutcome::Inconclusive: return "inconclusive";
        case TaskOutcome::Demo: return "demo";
    }
    return "fail";
}

Json scenario_to_json(const Scenario& s) {
    Json sets = Json::object(), functions = Json::object(), tasks = Json::array();
    for (const auto& [name, u] : s.sets) sets[name] = union_set_to_json(u);
    for (const auto& [name, f] : s.functions) functions[name] = pwa_to_json(f);
    for (const Task& t : s.tasks) tasks.push_back(Json{{"op", t.op}, {"args", t.args}});
    return Json{{"version", s.version},
                {"sets", std::move(sets)},
                {"functions", std::move(functions)},
                {"tasks", std::move(tasks)}};
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) throw SchemaError("", "expected a scenario object");
    Scenario s;
    auto ver = j.find("version");
    if (ver == j.end() || !ver->is_number_integer())
        throw SchemaError("version", "missing or non-integer");
    s.version = ver->get<int>();
    if (s.version != 1) throw SchemaError("version", "unsupported version");

    if (j.contains("sets")) {
        const Json& sets = j["sets"];
        if (!sets.is_object()) throw SchemaError("sets", "expected an object");
        for (auto it = sets.begin(); it != sets.end(); ++it)
            s.sets.emplace(it.key(), union_set_from_json(it.value(), "sets." + it.key()));
    }
    if (j.contains("functions")) {
        const Json& fns = j["functions"];
        if (!fns.is_object()) throw SchemaError("functions", "expected an object");
        for (auto it = fns.begin(); it != fns.end(); ++it)
            s.functions.emplace(it.key(), pwa_from_json(it.value(), "functions." + it.key()));
    }
    if (j.contains("tasks")) {
        const Json& tasks = j["tasks"];
        if (!tasks.is_array()) throw SchemaError("tasks", "expected an array");
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const std::string field = task_field(i);
            const Json& t = tasks[i];
            if (!t.is_object()) throw SchemaError(field, "expected a task object");
            auto op = t.find("op");
            if (op == t.end() || !op->is_string())
                throw SchemaError(field + ".op", "missing operation name");
            if (!known_ops.count(op->get<std::string>()))
                throw SchemaError(field + ".op",
                                  "unknown operation '" + op->get<std::string>() + "'");
            Json args = t.contains("args") ? t["args"] : Json::object();
            if (!args.is_object()) throw SchemaError(field + ".args", "expected an object");
            s.tasks.push_back({op->get<std::string>(), std::move(args)});
        }
    }

    // every set / function reference must resolve
    for (std::size_t i = 0; i < s.tasks.size(); ++i) {
        const std::string field = task_field(i);
        const Json& args = s.tasks[i].args;
        for (const char* key : {"set", "set_a", "set_b"}) {
            if (args.contains(key)) resolve_set(s, args, key, field);
        }
        for (const char* key : {"f1", "f2"}) {
            if (args.contains(key)) resolve_fn(s, args, key, field);
        }
    }
    return s;
}

TaskReport run_task(const Scenario& s, std::size_t index, const RunOptions& opts) {
    if (index >= s.tasks.size()) throw InputError("run_task: index out of range");
    check_dimensions(s, opts);
    const Task& t = s.tasks[index];
    TaskReport rep;
    rep.op = t.op;
    rep.echo = Json{{"op", t.op}, {"args", t.args}};
    TaskContext ctx{s, t.args, task_field(index), opts.seed + 101 * index};

    const auto start = std::chrono::steady_clock::now();
    if (t.op == "clarke-tangent-cone") run_clarke_tangent_cone(ctx, rep);
    else if (t.op == "clarke-membership") run_clarke_membership(ctx, rep);
    else if (t.op == "tangential-intersection") run_tangential_intersection(ctx, rep);
    else if (t.op == "normal-intersection") run_normal_intersection(ctx, rep);
    else if (t.op == "strong-transversality") run_strong_transversality(ctx, rep);
    else if (t.op == "witness-search") run_witness_search(ctx, rep);
    else if (t.op == "sum-closedness") run_sum_closedness(ctx, rep);
    else if (t.op == "sum-rule") run_sum_rule(ctx, rep);
    else if (t.op == "qualification") run_qualification(ctx, rep);
    else throw SchemaError(ctx.field + ".op", "unknown operation '" + t.op + "'");
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                      .count();

    std::string verdict = outcome_name(rep.outcome);
    for (char& c : verdict) c = static_cast<char>(std::toupper(c));
    rep.text = verdict + " " + t.op + ": " + rep.text;
    return rep;
}

std::vector<TaskReport> run_scenario(const Scenario& s, const RunOptions& opts) {
    std::vector<TaskReport> out;
    for (std::size_t i = 0; i < s.tasks.size(); ++i) out.push_back(run_task(s, i, opts));
    return out;
}

Json report_to_json(const std::vector<TaskReport>& reports) {
    Json tasks = Json::array();
    for (const TaskReport& r : reports) {
        tasks.push_back(Json{{"op", r.op},
                             {"echo", r.echo},
                             {"outcome", outcome_name(r.outcome)},
                             {"exact", r.exact},
                             {"details", r.details},
                             {"seconds", r.seconds}});
    }
    const int code = exit_code(reports);
    const std::string result = code == 0   ? "pass"
                               : code == 1 ? "certification-failure"
                                           : "inconclusive";
    return Json{{"tasks", std::move(tasks)}, {"result", result}};
}

std::string report_to_text(const std::vector<TaskReport>& reports) {
    std::string out;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        out += "[" + std::to_string(i + 1) + "/" + std::to_string(reports.size()) + "] " +
               reports[i].text + (reports[i].exact ? "" : " (sampled evidence)") + "\n";
    }
    const int code = exit_code(reports);
    out += code == 0   ? "result: pass\n"
           : code == 1 ? "result: certification-failure\n"
                       : "result: inconclusive\n";
    return out;
}

int exit_code(const std::vector<TaskReport>& reports) {
    bool inconclusive = false;
    for (const TaskReport& r : reports) {
        if (r.outcome == TaskOutcome::Fail) return 1;
        if (r.outcome == TaskOutcome::Inconclusive) inconclusive = true;
    }
    return inconclusive ? 3 : 0;
}

namespace {

Json vec_json(std::initializer_list<int> xs) {
    Json out = Json::array();
    for (int x : xs) out.push_back(std::to_string(x));
    return out;
}

UnionSet halfplane(const Vec& outward_normal) {
    return UnionSet::of(PolyhedralCone::from_halfspace_normals(2, {outward_normal}), 2);
}

Scenario gallery_quadrant_union() {
    Scenario s;
    const PolyhedralCone q1 = PolyhedralCone::nonnegative_orthant(2);
    s.sets.emplace("q1-union-q3", UnionSet::make({q1, q1.negate()}, zero_vec(2)));
    s.tasks.push_back(
        {"clarke-tangent-cone",
         Json{{"set", "q1-union-q3"},
              {"expect", Json{{"dim", 2},
                              {"v_rep", Json{{"rays", Json::array()},
                                             {"lines", Json::array()}}}}}}});
    for (auto dir : {vec_json({1, 0}), vec_json({0, 1}), vec_json({1, 1}),
                     vec_json({-1, -1})}) {
        s.tasks.push_back({"clarke-membership", Json{{"set", "q1-union-q3"},
                                                     {"direction", dir},
                                                     {"expect", "refuted"}}});
    }
    return s;
}

Scenario gallery_transversal_halfplanes() {
    Scenario s;
    s.sets.emplace("upper", halfplane({Rat(0), Rat(-1)}));              // y >= 0
    s.sets.emplace("under-diagonal", halfplane({Rat(-1), Rat(1)}));    // y <= x
    s.sets.emplace("wedge", UnionSet::of(PolyhedralCone::from_halfspace_normals(
                                             2, {{Rat(0), Rat(-1)}, {Rat(-1), Rat(1)}}),
                                         2));
    const Json d_a = Json::array({vec_json({1, 0}), vec_json({-1, 0}), vec_json({0, 1})});
    const Json d_b = Json::array({vec_json({1, 1}), vec_json({-1, -1}), vec_json({1, -1})});
    s.tasks.push_back({"tangential-intersection",
                       Json{{"set_a", "upper"}, {"set_b", "under-diagonal"}}});
    s.tasks.push_back({"normal-intersection", Json{{"set_a", "upper"},
                                                   {"set_b", "under-diagonal"},
                                                   {"expect_transversal", true}}});
    s.tasks.push_back({"strong-transversality", Json{{"set_a", "upper"},
                                                     {"set_b", "under-diagonal"},
                                                     {"d_a", d_a},
                                                     {"d_b", d_b},
                                                     {"expect", "certified"}}});
    s.tasks.push_back({"witness-search",
                       Json{{"set_a", "upper"},
                            {"set_b", "under-diagonal"},
                            {"d_a", d_a},
                            {"d_b", d_b},
                            {"x_a", Json::array({"0", "1/10"})},
                            {"x_b", Json::array({"1/10", "0"})},
                            {"epsilon", "1/10"}}});
    s.tasks.push_back(
        {"clarke-tangent-cone",
         Json{{"set", "wedge"},
              {"expect",
               Json{{"dim", 2},
                    {"v_rep", Json{{"rays", Json::array({vec_json({1, 0}),
                                                         vec_json({1, 1})})},
                                   {"lines", Json::array()}}}}}}});
    return s;
}

Scenario gallery_nontransversal_complements() {
    Scenario s;
    s.sets.emplace("upper", halfplane({Rat(0), Rat(-1)}));  // y >= 0
    s.sets.emplace("lower", halfplane({Rat(0), Rat(1)}));   // y <= 0
    s.sets.emplace("boundary-line",
                   UnionSet::of(PolyhedralCone::from_generators(
                                    2, {{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}}),
                                2));
    s.tasks.push_back({"normal-intersection", Json{{"set_a", "upper"},
                                                   {"set_b", "lower"},
                                                   {"expect_transversal", false}}});
    s.tasks.push_back(
        {"strong-transversality",
         Json{{"set_a", "upper"},
              {"set_b", "lower"},
              {"d_a", Json::array({vec_json({1, 0}), vec_json({-1, 0}), vec_json({0, 1})})},
              {"d_b", Json::array({vec_json({1, 0}), vec_json({-1, 0}), vec_json({0, -1})})},
              {"expect", "not-certified"}}});
    s.tasks.push_back(
        {"clarke-tangent-cone",
         Json{{"set", "boundary-line"},
              {"expect",
               Json{{"dim", 2},
                    {"v_rep", Json{{"rays", Json::array()},
                                   {"lines", Json::array({vec_json({1, 0})})}}}}}}});
    return s;
}

Scenario gallery_soc_nonclosed_sum() {
    Scenario s;
    s.tasks.push_back(
        {"sum-closedness",
         Json{{"z1", Json{{"kind", "soc"}, {"dim", 3}}},
              {"z2", Json{{"kind", "subspace"},
                          {"dim", 3},
                          {"basis", Json::array({vec_json({1, 0, 1}),
                                                 vec_json({0, 1, 0})})}}},
              {"w", vec_json({0, -1, 0})},
              {"k_max", 10},
              {"expect", "not-closed-evidence"}}});
    // sanity branch: polyhedral sums of polars are closed
    s.tasks.push_back({"sum-closedness",
                       Json{{"z1", Json{{"kind", "ray"}, {"dir", vec_json({1, 0, 0})}}},
                            {"z2", Json{{"kind", "ray"}, {"dir", vec_json({0, 1, 0})}}},
                            {"w", vec_json({0, 0, 0})},
                            {"k_max", 4},
                            {"expect", "closed"}}});
    return s;
}

Json abs_pieces() {
    return Json::array({Json{{"gradient", vec_json({1})}, {"offset", "0"}},
                        Json{{"gradient", vec_json({-1})}, {"offset", "0"}}});
}

Json indicator_json(int domain_sign) {
    // 0 on a half-line, +infinity outside
    return Json{{"type", "max"},
                {"pieces", Json::array({Json{{"gradient", vec_json({0})}, {"offset", "0"}}})},
                {"domain", Json{{"dim", 1},
                                {"facets", Json::array({Json{
                                               {"normal", vec_json({-domain_sign})},
                                               {"offset", "0"}}})}}}};
}

Scenario gallery_abs_sum_rule() {
    Scenario s;
    s.functions.emplace("abs", pwa_from_json(Json{{"type", "max"}, {"pieces", abs_pieces()}},
                                             "functions.abs"));
    s.functions.emplace("neg-abs",
                        pwa_from_json(Json{{"type", "negmax"}, {"pieces", abs_pieces()}},
                                      "functions.neg-abs"));
    s.tasks.push_back({"sum-rule", Json{{"f1", "abs"},
                                        {"f2", "neg-abs"},
                                        {"point", vec_json({0})}}});
    s.tasks.push_back({"sum-rule", Json{{"f1", "abs"},
                                        {"f2", "abs"},
                                        {"point", vec_json({0})}}});
    s.tasks.push_back({"qualification", Json{{"f1", "abs"},
                                             {"f2", "neg-abs"},
                                             {"point", vec_json({0})},
                                             {"expect", "holds"}}});
    return s;
}

Scenario gallery_indicator_qualification() {
    Scenario s;
    s.functions.emplace("ind-right", pwa_from_json(indicator_json(1), "functions.ind-right"));
    s.functions.emplace("ind-left", pwa_from_json(indicator_json(-1), "functions.ind-left"));
    s.functions.emplace("abs", pwa_from_json(Json{{"type", "max"}, {"pieces", abs_pieces()}},
                                             "functions.abs"));
    s.functions.emplace("neg-abs",
                        pwa_from_json(Json{{"type", "negmax"}, {"pieces", abs_pieces()}},
                                      "functions.neg-abs"));
    s.tasks.push_back({"qualification", Json{{"f1", "ind-right"},
                                             {"f2", "ind-left"},
                                             {"point", vec_json({0})},
                                             {"expect", "fails"}}});
    s.tasks.push_back({"qualification", Json{{"f1", "abs"},
                                             {"f2", "neg-abs"},
                                             {"point", vec_json({0})},
                                             {"expect", "holds"}}});
    return s;
}

} // namespace

std::vector<std::string> gallery_names() {
    return {"quadrant-union-clarke-collapse", "transversal-halfplanes",
            "nontransversal-complements",     "soc-nonclosed-sum",
            "abs-sum-rule",                   "indicator-qualification-failure"};
}

Scenario gallery(const std::string& name) {
    if (name == "quadrant-union-clarke-collapse") return gallery_quadrant_union();
    if (name == "transversal-halfplanes") return gallery_transversal_halfplanes();
    if (name == "nontransversal-complements") return gallery_nontransversal_complements();
    if (name == "soc-nonclosed-sum") return gallery_soc_nonclosed_sum();
    if (name == "abs-sum-rule") return gallery_abs_sum_rule();
    if (name == "indicator-qualification-failure") return gallery_indicator_qualification();
    std::string what = "unknown gallery '" + name + "'; available:";
    for (const std::string& n : gallery_names()) what += " " + n;
    throw InputError(what);
}

std::vector<std::pair<std::string, UnionSet>> gallery_sets() {
    std::vector<std::pair<std::string, UnionSet>> out;
    std::set<std::string> seen;
    for (const std::string& name : gallery_names()) {
        for (const auto& [set_name, u] : gallery(name).sets) {
            if (seen.insert(set_name).second) out.emplace_back(set_name, u);
        }
    }
    return out;
}

} // namespace conelab
