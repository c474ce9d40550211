#include "nematicon/config.hpp"

#include "nematicon/io.hpp"

#include <algorithm>

namespace nematicon::config {

Json parse(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (value.is_object() || value.is_array())
      throw ConfigError("config must stay flat; key '" + key +
                        "' holds a nested value");
  }
  return j;
}

Json load(const std::string& path) {
  try {
    return parse(io::read_file(path));
  } catch (const IoError& e) {
    throw ConfigError(e.what());
  }
}

void restrict_keys(const Json& j, const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError("unknown config key '" + key + "'");
  }
}

Real get_real(const Json& j, const std::string& key, Real fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number())
    throw ConfigError("config key '" + key + "' must be a number");
  return j[key].get<Real>();
}

Index get_index(const Json& j, const std::string& key, Index fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer())
    throw ConfigError("config key '" + key + "' must be an integer");
  return j[key].get<Index>();
}

bool get_bool(const Json& j, const std::string& key, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_boolean())
    throw ConfigError("config key '" + key + "' must be a boolean");
  return j[key].get<bool>();
}

std::string get_string(const Json& j, const std::string& key,
                       std::string fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string())
    throw ConfigError("config key '" + key + "' must be a string");
  return j[key].get<std::string>();
}

}  // namespace nematicon::config
