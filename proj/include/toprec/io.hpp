#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "toprec/curve.hpp"
#include "toprec/mrat.hpp"

namespace toprec {

using Json = nlohmann::ordered_json;

inline constexpr const char* kEngineVersion = "toprec-1.0.0";

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical JSON of a rational function: terms and denominator factors sorted by
// variable names, factor signs normalized, so output does not depend on interning order.
Json mrat_to_json(const MRat& f);
MRat mrat_from_json(const Json& j);
// Compact canonical dump.
std::string emit_mrat(const MRat& f);
MRat parse_mrat(std::string_view s);

// Curve file: {"name", "x": {"num": [c0, c1, ...], "den": [...]}, "y": {...}}, ascending powers of z.
Curve curve_from_json(const Json& j);
Json curve_to_json(const Curve& c);
Curve load_curve(const std::filesystem::path& p);
// Digest of the canonical serialization of (x, y); the name is not part of it.
std::string curve_hash(const Curve& c);

std::string sha256_hex(std::string_view data);

// Sign convention and layout flags stored with every result.
Json convention_flags();

struct Envelope {
  std::string curve_hash;
  int g = 0, m = 0, n = 0;
  MRat body;
  std::string engine_version = kEngineVersion;
  Json conventions = convention_flags();
  std::string provenance;
  std::uint64_t seed = 0;
};
// Includes a body digest; envelope_from_json rejects a mismatch with FormatError.
Json envelope_to_json(const Envelope& e);
Envelope envelope_from_json(const Json& j);

// Write text to path through a temporary file in the same directory and a rename.
void write_atomic(const std::filesystem::path& p, const std::string& text);

// One envelope per file under dir/<curve hash>/<kind>_g<g>_m<m>_n<n>.json.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  std::filesystem::path path_for(const std::string& kind, const std::string& hash, int g, int m, int n) const;
  // Hit only on exact hash, version and flag match with a valid digest. A corrupt file
  // counts as a miss and is reported in corrupt().
  std::optional<Envelope> load(const std::string& kind, const std::string& hash, int g, int m, int n);
  std::filesystem::path store(const std::string& kind, const Envelope& e);

  int hits() const { return hits_; }
  int misses() const { return misses_; }
  int corrupt() const { return corrupt_; }

 private:
  std::filesystem::path dir_;
  int hits_ = 0, misses_ = 0, corrupt_ = 0;
};

// Human-readable rendering of omega / prod dz.
std::string pretty_body(const MRat& body, int g, int m, int n);

}  // namespace toprec
