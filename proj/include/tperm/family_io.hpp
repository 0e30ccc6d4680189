#pragma once

#include "tperm/family.hpp"

#include <json.hpp>

#include <string>

namespace tperm {

using Json = nlohmann::ordered_json;

/// {"n": int, "t": int|null, "sets": [[[row, col], ...], ...]}
Json to_json(const Family& f);
Json to_json(const PartialPermutation& p);
/// Validates every member; errors name the offending member index.
Family family_from_json(const Json& j);
PartialPermutation partial_from_json(int n, const Json& j);

Family load_family(const std::string& path);
void save_family(const Family& f, const std::string& path);

}  // namespace tperm
