#pragma once

#include "nematicon/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

// Run configuration: one flat JSON object per file, scalar values only.
// Unknown keys are rejected rather than ignored, so a typo fails loudly
// instead of silently running with defaults.
namespace nematicon::config {

using Json = nlohmann::json;

Json parse(const std::string& text);
Json load(const std::string& path);

void restrict_keys(const Json& j, const std::vector<std::string>& allowed);

Real get_real(const Json& j, const std::string& key, Real fallback);
Index get_index(const Json& j, const std::string& key, Index fallback);
bool get_bool(const Json& j, const std::string& key, bool fallback);
std::string get_string(const Json& j, const std::string& key,
                       std::string fallback);

}  // namespace nematicon::config
