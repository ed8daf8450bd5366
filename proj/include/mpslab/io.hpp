#pragma once

// JSON file formats.
//
// State:       {"schema_version":1,"L":4,"N":2,"terms":[{"occ":"1100","coeff":0.5},...]}
//              "occ" is mu_1..mu_L left to right; coefficients carry 17 significant digits.
// Permutation: {"schema_version":1,"perm":[1,3,2,4]}  (new position -> old orbital)
// Manifest:    written next to every CLI output as <output>.manifest.json.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "mpslab/fock.hpp"
#include "mpslab/ordering.hpp"

namespace mpslab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.3.0";

/// State plus free-form provenance (kind, seed, prng, ...).
struct StateFile {
  CIState state;
  nlohmann::json meta = nlohmann::json::object();
};

std::string state_to_json(const CIState& state, const nlohmann::json& meta = nlohmann::json::object());
StateFile state_from_json(const std::string& text);

void write_state(const std::filesystem::path& path, const CIState& state,
                 const nlohmann::json& meta = nlohmann::json::object());
StateFile read_state(const std::filesystem::path& path);

nlohmann::json permutation_to_json(const OrbitalPermutation& perm);
OrbitalPermutation permutation_from_json(const nlohmann::json& j);
OrbitalPermutation read_permutation(const std::filesystem::path& path);
void write_permutation(const std::filesystem::path& path, const OrbitalPermutation& perm);

struct RunManifest {
  std::string subcommand;
  nlohmann::json flags = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string prng;
  std::string tool_version = kToolVersion;
  /// ISO-8601 UTC; taken from SOURCE_DATE_EPOCH when set.
  std::string timestamp;

  nlohmann::json to_json() const;
};

std::string current_timestamp();

std::filesystem::path manifest_path(const std::filesystem::path& output);
void write_manifest(const std::filesystem::path& output, const RunManifest& manifest);

/// Writes text in binary mode, throwing IoError with the path on failure.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace mpslab
