#pragma once

#include <json.hpp>

#include "sepfol/analysis.hpp"
#include "sepfol/bounds.hpp"
#include "sepfol/decide.hpp"
#include "sepfol/reductions.hpp"

namespace sepfol {

using Json = nlohmann::ordered_json;

// JSON views of results; key order is fixed so output is byte-stable.
Json to_json(const FragmentLabel& label);
Json to_json(const Bounds& bounds);
Json to_json(const Verdict& verdict);
Json to_json(const Structure& s);
Json to_json(const ClauseSet& clauses);
Json to_json(const std::vector<FingerprintTable>& tables);

}  // namespace sepfol
