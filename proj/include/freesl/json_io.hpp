#pragma once

#include "freesl/homsolver.hpp"
#include "freesl/weylsim.hpp"

#include <json.hpp>

namespace freesl {

using Json = nlohmann::json;

// Indices in JSON are 1-based; rationals are strings.
Json to_json(const Poly& p);
Poly poly_from_json(const Json& j, std::size_t nvars);

Json to_json(const Gpm& g);
Gpm gpm_from_json(const Json& j, std::size_t nvars);

Json to_json(const FreeModule& mod);
FreeModule module_from_json(const Json& j);

Json to_json(const ExpModuleSpec& spec);
ExpModuleSpec spec_from_json(const Json& j);
bool looks_like_spec(const Json& j);

Json to_json(const PolyMatrix& mat);
Json to_json(const RelationReport& r);
Json to_json(const TruncReport& r);
Json to_json(const CensusReport& r);

} // namespace freesl
