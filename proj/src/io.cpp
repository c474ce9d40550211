#include "nematicon/io.hpp"

#include "nematicon/version.hpp"

#include <json.hpp>

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; this build target is not");

namespace nematicon::io {

namespace {

using nlohmann::json;

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json parse_header(const std::string& blob, size_t& payload_at) {
  const size_t nl = blob.find('\n');
  if (nl == std::string::npos)
    throw CorruptFile("field file has no header line");
  payload_at = nl + 1;
  json h = json::parse(blob.substr(0, nl), nullptr, false);
  if (h.is_discarded() || !h.is_object())
    throw CorruptFile("field file header is not a JSON object");
  if (!h.contains("schema_version") || !h["schema_version"].is_number_integer())
    throw CorruptFile("field file header lacks a schema version");
  if (h["schema_version"].get<int>() != schema_version)
    throw VersionError("unsupported field file schema version");
  return h;
}

void check_payload(const json& h, const std::string& blob, size_t payload_at,
                   size_t expect_bytes) {
  if (blob.size() - payload_at != expect_bytes)
    throw CorruptFile("field file payload is truncated or oversized");
  const uint64_t sum = fnv1a(blob.data() + payload_at, expect_bytes);
  if (!h.contains("checksum") || h["checksum"].get<std::string>() != hex64(sum))
    throw CorruptFile("field file checksum mismatch");
}

void write_field_file(const std::string& path, json header, const void* data,
                      size_t bytes) {
  header["schema_version"] = schema_version;
  header["checksum"] = hex64(fnv1a(data, bytes));
  std::string blob = header.dump();
  blob += '\n';
  blob.append(static_cast<const char*>(data), bytes);
  atomic_write(path, blob);
}

Real header_real(const json& h, const char* key) {
  if (!h.contains(key) || !h[key].is_number())
    throw CorruptFile(std::string("field file header lacks ") + key);
  return h[key].get<Real>();
}

Index header_index(const json& h, const char* key) {
  if (!h.contains(key) || !h[key].is_number_integer())
    throw CorruptFile(std::string("field file header lacks ") + key);
  return h[key].get<Index>();
}

std::string header_str(const json& h, const char* key) {
  if (!h.contains(key) || !h[key].is_string())
    throw CorruptFile(std::string("field file header lacks ") + key);
  return h[key].get<std::string>();
}

}  // namespace

uint64_t fnv1a(const void* data, size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  uint64_t hash = 0xcbf29ce484222325ull;
  for (size_t i = 0; i < len; ++i) {
    hash ^= p[i];
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string out((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed on " + path);
  return out;
}

void atomic_write(const std::string& path, const std::string& bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw IoError("write failed on " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " into place");
  }
}

void save_field(const std::string& path, const RadialField& f) {
  const auto& g = *f.grid;
  json h;
  h["kind"] = "radial";
  h["r_max"] = g.r_max;
  h["n"] = g.n;
  h["dtype"] = "f64-le";
  h["count"] = g.n;
  write_field_file(path, std::move(h), f.values.data(),
                   sizeof(Real) * static_cast<size_t>(g.n));
}

void save_field(const std::string& path, const ComplexPlaneField& f) {
  const auto& g = *f.grid;
  json h;
  h["kind"] = "plane";
  h["length"] = g.length;
  h["n"] = g.n;
  h["dtype"] = "c128-le";
  h["count"] = g.n * g.n;
  write_field_file(path, std::move(h), f.values.data(),
                   sizeof(Complex) * static_cast<size_t>(g.n * g.n));
}

void save_field(const std::string& path, const RealPlaneField& f) {
  ComplexPlaneField c(f.grid);
  c.values = f.values.cast<Complex>();
  save_field(path, c);
}

RadialField load_radial(const std::string& path) {
  const std::string blob = read_file(path);
  size_t at = 0;
  const json h = parse_header(blob, at);
  if (header_str(h, "kind") != "radial")
    throw GridMismatch(path + " does not hold a radial field");
  if (header_str(h, "dtype") != "f64-le")
    throw CorruptFile(path + " has an unexpected dtype for a radial field");
  const Index n = header_index(h, "n");
  if (header_index(h, "count") != n)
    throw CorruptFile(path + " has an inconsistent element count");
  auto grid = RadialGrid::make(header_real(h, "r_max"), n);
  check_payload(h, blob, at, sizeof(Real) * static_cast<size_t>(n));

  RadialField f(grid);
  std::memcpy(f.values.data(), blob.data() + at,
              sizeof(Real) * static_cast<size_t>(n));
  return f;
}

ComplexPlaneField load_plane(const std::string& path) {
  const std::string blob = read_file(path);
  size_t at = 0;
  const json h = parse_header(blob, at);
  if (header_str(h, "kind") != "plane")
    throw GridMismatch(path + " does not hold a plane field");
  if (header_str(h, "dtype") != "c128-le")
    throw CorruptFile(path + " has an unexpected dtype for a plane field");
  const Index n = header_index(h, "n");
  if (header_index(h, "count") != n * n)
    throw CorruptFile(path + " has an inconsistent element count");
  auto grid = PlaneGrid::make(header_real(h, "length"), n);
  check_payload(h, blob, at, sizeof(Complex) * static_cast<size_t>(n * n));

  ComplexPlaneField f(grid);
  std::memcpy(f.values.data(), blob.data() + at,
              sizeof(Complex) * static_cast<size_t>(n * n));
  return f;
}

RadialField load_radial(const std::string& path, const RadialGridPtr& expect) {
  RadialField f = load_radial(path);
  if (f.grid->n != expect->n || f.grid->r_max != expect->r_max)
    throw GridMismatch(path + " holds a field on a different radial grid");
  f.grid = expect;
  return f;
}

ComplexPlaneField load_plane(const std::string& path,
                             const PlaneGridPtr& expect) {
  ComplexPlaneField f = load_plane(path);
  if (f.grid->n != expect->n || f.grid->length != expect->length)
    throw GridMismatch(path + " holds a field on a different plane grid");
  f.grid = expect;
  return f;
}

}  // namespace nematicon::io
