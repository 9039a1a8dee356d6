#pragma once

#include <json.hpp>

#include "tsalg/group.hpp"
#include "tsalg/poly.hpp"

namespace tsalg {

using Json = nlohmann::ordered_json;

// {"p": p, "nvars": n, "terms": [[c, [e_0, ..., e_{n-1}]], ...]} in canonical term order
Json poly_to_json(const SparsePoly& f);
// throws ParseError on malformed input
SparsePoly poly_from_json(const Json& j);

Json group_to_json(const FiniteGroup& g);

}  // namespace tsalg
