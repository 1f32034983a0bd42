#pragma once

#include <json.hpp>

#include "gkit/base.hpp"
#include "gkit/error.hpp"

namespace gkit {

// nlohmann::json keeps object keys in a std::map, so dumps are sorted.
using Json = nlohmann::json;

Json witt_to_json(const Algebra& q, const std::vector<Elem>& w);

// {"n": n, "coords": {"j,i1,..,id": "<element>"}}; zero coordinates omitted.
Json cohen_to_json(const CohenRing& ring, const CohenElem& c);

// {"components": [cohen json per pi-power], "text": "..."}.
Json base_to_json(const BaseRing& ring, const BaseElem& a);

// {"error": "<Code>", "message": ...} plus line/column/expected for parse
// errors.
Json error_to_json(const Error& e);

}  // namespace gkit
