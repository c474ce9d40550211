#pragma once

namespace nematicon {

inline constexpr const char* version = "0.1.0";

// Bumped whenever the on-disk layout of field files or run manifests changes.
inline constexpr int schema_version = 1;

}  // namespace nematicon
