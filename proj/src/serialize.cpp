#include "conelab/serialize.hpp"

namespace conelab {

SchemaError::SchemaError(std::string field, const std::string& what)
    : InputError(field + ": " + what), field_(std::move(field)) {}

namespace {

const Json& require(const Json& j, const std::string& key, const std::string& field) {
    if (!j.is_object()) throw SchemaError(field, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(field + "." + key, "missing field");
    return *it;
}

std::size_t dim_from_json(const Json& j, const std::string& field) {
    const Json& d = require(j, "dim", field);
    if (!d.is_number_integer() || d.get<long long>() <= 0)
        throw SchemaError(field + ".dim", "expected a positive integer");
    return d.get<std::size_t>();
}

std::vector<Vec> vec_list_from_json(const Json& j, std::size_t n, const std::string& field) {
    if (!j.is_array()) throw SchemaError(field, "expected an array of vectors");
    std::vector<Vec> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        Vec v = vec_from_json(j[i], field + "[" + std::to_string(i) + "]");
        if (v.size() != n)
            throw SchemaError(field + "[" + std::to_string(i) + "]",
                              "expected dimension " + std::to_string(n));
        out.push_back(std::move(v));
    }
    return out;
}

Json vec_list_to_json(const std::vector<Vec>& vs) {
    Json out = Json::array();
    for (const Vec& v : vs) out.push_back(vec_to_json(v));
    return out;
}

Json halfspace_to_json(const Halfspace& h) {
    return Json{{"normal", vec_to_json(h.normal)}, {"offset", rat_to_json(h.offset)}};
}

Halfspace halfspace_from_json(const Json& j, std::size_t n, const std::string& field) {
    Halfspace h{vec_from_json(require(j, "normal", field), field + ".normal"),
                rat_from_json(require(j, "offset", field), field + ".offset")};
    if (h.normal.size() != n)
        throw SchemaError(field + ".normal", "expected dimension " + std::to_string(n));
    return h;
}

} // namespace

Json rat_to_json(const Rat& x) { return to_string(x); }

Rat rat_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (!j.is_string()) throw SchemaError(field, "expected a rational \"p/q\" string");
    try {
        return parse_rat(j.get<std::string>());
    } catch (const InputError& e) {
        throw SchemaError(field, e.what());
    }
}

Json vec_to_json(const Vec& v) {
    Json out = Json::array();
    for (const Rat& x : v) out.push_back(rat_to_json(x));
    return out;
}

Vec vec_from_json(const Json& j, const std::string& field) {
    if (!j.is_array() || j.empty()) throw SchemaError(field, "expected a nonempty array");
    Vec v;
    for (std::size_t i = 0; i < j.size(); ++i) {
        v.push_back(rat_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    }
    return v;
}

Json cone_to_json(const PolyhedralCone& c) {
    return Json{{"dim", c.dim()},
                {"v_rep", Json{{"rays", vec_list_to_json(c.rays())},
                               {"lines", vec_list_to_json(c.lines())}}}};
}

PolyhedralCone cone_from_json(const Json& j, const std::string& field) {
    const std::size_t n = dim_from_json(j, field);
    const bool has_h = j.contains("h_rep"), has_v = j.contains("v_rep");
    if (has_h == has_v)
        throw SchemaError(field, "expected exactly one of h_rep and v_rep");
    if (has_h) {
        return PolyhedralCone::from_halfspace_normals(
            n, vec_list_from_json(j["h_rep"], n, field + ".h_rep"));
    }
    const Json& v = j["v_rep"];
    std::vector<Vec> gens;
    if (v.contains("rays")) gens = vec_list_from_json(v["rays"], n, field + ".v_rep.rays");
    if (v.contains("lines")) {
        for (Vec& l : vec_list_from_json(v["lines"], n, field + ".v_rep.lines")) {
            gens.push_back(l);
            gens.push_back(neg(l));
        }
    }
    return PolyhedralCone::from_generators(n, gens);
}

Json polyhedron_to_json(const Polyhedron& p) {
    FacetDescription fd = p.facet_description();
    Json facets = Json::array(), equations = Json::array();
    for (const Halfspace& h : fd.facets) facets.push_back(halfspace_to_json(h));
    for (const Halfspace& h : fd.equations) equations.push_back(halfspace_to_json(h));
    return Json{{"dim", p.dim()}, {"facets", facets}, {"equations", equations}};
}

Polyhedron polyhedron_from_json(const Json& j, const std::string& field) {
    const std::size_t n = dim_from_json(j, field);
    std::vector<Halfspace> facets, equations;
    auto read = [&](const char* key, std::vector<Halfspace>& out) {
        if (!j.contains(key)) return;
        const Json& arr = j[key];
        const std::string f = field + "." + key;
        if (!arr.is_array()) throw SchemaError(f, "expected an array");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            out.push_back(halfspace_from_json(arr[i], n, f + "[" + std::to_string(i) + "]"));
        }
    };
    read("facets", facets);
    read("equations", equations);
    return Polyhedron::from_halfspaces(n, facets, equations);
}

Json union_set_to_json(const UnionSet& u) {
    Json pieces = Json::array();
    for (const PolyhedralCone& c : u.pieces) pieces.push_back(cone_to_json(c));
    return Json{{"basepoint", vec_to_json(u.basepoint)}, {"pieces", pieces}};
}

UnionSet union_set_from_json(const Json& j, const std::string& field) {
    Vec basepoint = vec_from_json(require(j, "basepoint", field), field + ".basepoint");
    const Json& arr = require(j, "pieces", field);
    if (!arr.is_array() || arr.empty())
        throw SchemaError(field + ".pieces", "expected a nonempty array");
    std::vector<PolyhedralCone> pieces;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string f = field + ".pieces[" + std::to_string(i) + "]";
        PolyhedralCone c = cone_from_json(arr[i], f);
        if (c.dim() != basepoint.size()) throw SchemaError(f, "piece dimension mismatch");
        pieces.push_back(std::move(c));
    }
    try {
        return UnionSet::make(std::move(pieces), std::move(basepoint));
    } catch (const InputError& e) {
        throw SchemaError(field, e.what());
    }
}

Json pwa_to_json(const PWAFunction& f) {
    Json pieces = Json::array();
    for (const AffinePiece& p : f.pieces()) {
        pieces.push_back(Json{{"gradient", vec_to_json(p.gradient)},
                              {"offset", rat_to_json(p.offset)}});
    }
    Json out{{"type", f.kind() == PWAFunction::Kind::Max ? "max" : "negmax"},
             {"pieces", pieces}};
    if (f.domain()) out["domain"] = polyhedron_to_json(*f.domain());
    return out;
}

PWAFunction pwa_from_json(const Json& j, const std::string& field) {
    const Json& type = require(j, "type", field);
    if (!type.is_string() || (type != "max" && type != "negmax"))
        throw SchemaError(field + ".type", "expected \"max\" or \"negmax\"");
    const Json& arr = require(j, "pieces", field);
    if (!arr.is_array() || arr.empty())
        throw SchemaError(field + ".pieces", "expected a nonempty array");
    std::vector<AffinePiece> pieces;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string f = field + ".pieces[" + std::to_string(i) + "]";
        pieces.push_back({vec_from_json(require(arr[i], "gradient", f), f + ".gradient"),
                          rat_from_json(require(arr[i], "offset", f), f + ".offset")});
    }
    const std::size_t n = pieces[0].gradient.size();
    std::optional<Polyhedron> domain;
    if (j.contains("domain")) domain = polyhedron_from_json(j["domain"], field + ".domain");
    try {
        return type == "max"
                   ? PWAFunction::max_of(n, std::move(pieces), std::move(domain))
                   : PWAFunction::neg_max_of(n, std::move(pieces), std::move(domain));
    } catch (const InputError& e) {
        throw SchemaError(field, e.what());
    }
}

} // namespace conelab
