#pragma once

#include <string>

#include <json.hpp>

#include "coverfam/family.hpp"

namespace coverfam {

// Canonical interchange format:
//   {"alphabet": {"mod": s} | {"band": [lo, hi]}, "q": q, "rows": [[...], ...]}
// The loader rejects out-of-range entries and duplicate rows. An optional
// "provenance" string key is preserved when present.
nlohmann::json family_to_json(const Family& family);
Family family_from_json(const nlohmann::json& j);

Family load_family_file(const std::string& path);
void save_family_file(const Family& family, const std::string& path);

} // namespace coverfam
