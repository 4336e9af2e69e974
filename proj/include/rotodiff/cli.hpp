#pragma once

// Batch scenarios: JSON config in, CSV/JSON data plus a manifest out.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotodiff/error.hpp"
#include "rotodiff/planar.hpp"

namespace rotodiff::cli {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

// Config rejected by the schema; pointer() is the JSON pointer of the
// offending value ("" for the root).
class ValidationError : public ConfigError {
 public:
  ValidationError(std::string pointer, const std::string& message)
      : ConfigError(message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

// The published JSON schema (draft 2020-12).
const std::string& schema_text();
const Json& schema();

// Validates against the schema, fills defaults and normalizes numbers
// declared as "number" to floating point, so semantically equal configs
// compare equal. Throws ValidationError.
Json canonicalize(const Json& config);

// Parses a file; syntax errors become ValidationError.
Json load_config(const std::filesystem::path& path);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  std::optional<std::uint64_t> seed;
};

struct EmittedFile {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

// Runs a canonical or raw config, writes all outputs and finally
// <prefix>_manifest.json into out_dir. Returns the manifest.
Json run_scenario(const Json& config, const RunOptions& options);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

// Long-format CSV text: header alpha,m,w; m outer ascending, alpha inner
// ascending; alpha with 12 significant digits.
std::string wigner_csv(const planar::PlanarWignerState& state);
void emit_wigner_csv(const planar::PlanarWignerState& state,
                     const std::filesystem::path& path);

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

// {"error": kind, "message": ..., [extra fields]}
Json error_json(const std::string& kind, const std::string& message);

}  // namespace rotodiff::cli
