#pragma once

#include "conelab/pwa.hpp"

#include <json.hpp>

#include <string>

namespace conelab {

using Json = nlohmann::json;

/// Raised on malformed documents; carries the offending field path
/// (dot/bracket notation, e.g. "tasks[2].set").
class SchemaError : public InputError {
public:
    SchemaError(std::string field, const std::string& what);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

// Rationals serialize as "p/q" strings ("p" when integral); vectors as
// arrays of rationals.  All parsers take the field path for errors.
Json rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j, const std::string& field);
Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j, const std::string& field);

/// {"dim": n, "h_rep": [normal, ...]} or
/// {"dim": n, "v_rep": {"rays": [...], "lines": [...]}};
/// emission uses the canonical v_rep.
Json cone_to_json(const PolyhedralCone& c);
PolyhedralCone cone_from_json(const Json& j, const std::string& field);

/// {"dim": n, "facets": [{"normal": v, "offset": r}, ...],
///  "equations": [...]}.
Json polyhedron_to_json(const Polyhedron& p);
Polyhedron polyhedron_from_json(const Json& j, const std::string& field);

/// {"basepoint": v, "pieces": [cone, ...]}.
Json union_set_to_json(const UnionSet& u);
UnionSet union_set_from_json(const Json& j, const std::string& field);

/// {"type": "max" | "negmax", "pieces": [{"gradient": v, "offset": r}],
///  "domain"?: polyhedron}.
Json pwa_to_json(const PWAFunction& f);
PWAFunction pwa_from_json(const Json& j, const std::string& field);

} // namespace conelab
