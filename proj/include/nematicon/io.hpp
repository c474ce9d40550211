#pragma once

#include "nematicon/grid.hpp"
#include "nematicon/types.hpp"

#include <cstdint>
#include <string>

// Field archival. A field file is one JSON header line terminated by LF,
// followed by the raw little-endian payload:
//
//   {"schema_version":1,"kind":"radial","r_max":40,"n":2048,
//    "dtype":"f64-le","count":2048,"checksum":"..."}
//
// plane files carry "length" instead of "r_max" and store complex values
// ("c128-le", re/im interleaved). The checksum is FNV-1a 64 over the
// payload, hex encoded. Loaders verify the checksum and payload size
// (CorruptFile), refuse unknown schema versions (VersionError), and never
// resample: when the caller expects a grid, any disagreement is a
// GridMismatch. Writes go through a temp file and rename so readers never
// observe a half-written file.
namespace nematicon::io {

uint64_t fnv1a(const void* data, size_t len);

std::string read_file(const std::string& path);
void atomic_write(const std::string& path, const std::string& bytes);

void save_field(const std::string& path, const RadialField& f);
void save_field(const std::string& path, const ComplexPlaneField& f);
void save_field(const std::string& path, const RealPlaneField& f);

RadialField load_radial(const std::string& path);
ComplexPlaneField load_plane(const std::string& path);
RadialField load_radial(const std::string& path, const RadialGridPtr& expect);
ComplexPlaneField load_plane(const std::string& path,
                             const PlaneGridPtr& expect);

}  // namespace nematicon::io
