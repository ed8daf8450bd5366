#include "mpslab/io.hpp"

#include <bit>
#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>

#include "mpslab/error.hpp"

namespace mpslab {

using nlohmann::json;

namespace {

std::string format_coeff(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw IoError(std::string("state file: missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------- states

std::string state_to_json(const CIState& state, const json& meta) {
  // Hand-formatted so coefficients keep exactly 17 significant digits.
  std::ostringstream os;
  os << "{\n  \"schema_version\": " << kSchemaVersion << ",\n  \"L\": " << state.L()
     << ",\n  \"N\": " << state.N() << ",\n";
  if (!meta.empty()) os << "  \"meta\": " << meta.dump() << ",\n";
  os << "  \"terms\": [";
  bool first = true;
  for (const auto& [tuple, coeff] : state.terms()) {
    os << (first ? "\n" : ",\n") << "    {\"occ\": \"" << bits_to_string(tuple.to_bits(state.L()), state.L())
       << "\", \"coeff\": " << format_coeff(coeff) << '}';
    first = false;
  }
  os << (first ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

StateFile state_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("state file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw IoError("state file must hold a JSON object");
  if (j.contains("schema_version") && j["schema_version"] != kSchemaVersion) {
    throw IoError("unsupported state schema_version " + j["schema_version"].dump());
  }
  const int L = require_int(j, "L");
  const int N = require_int(j, "N");
  StateFile file{CIState(L, N)};
  if (j.contains("meta")) file.meta = j["meta"];
  if (!j.contains("terms") || !j["terms"].is_array()) throw IoError("state file: missing 'terms' array");

  std::set<Bits> seen;
  std::size_t pos = 0;
  for (const auto& term : j["terms"]) {
    if (!term.contains("occ") || !term["occ"].is_string() || !term.contains("coeff") ||
        !term["coeff"].is_number()) {
      throw IoError("state file: term " + std::to_string(pos) + " needs 'occ' and 'coeff'");
    }
    const auto occ = term["occ"].get<std::string>();
    if (occ.size() != static_cast<std::size_t>(L)) {
      throw IoError("state file: occupation '" + occ + "' does not have length L=" + std::to_string(L));
    }
    const Bits bits = bits_from_string(occ);
    if (std::popcount(bits) != N) {
      throw IoError("state file: occupation '" + occ + "' does not hold N=" + std::to_string(N) +
                    " electrons");
    }
    if (!seen.insert(bits).second) throw IoError("state file: duplicate occupation '" + occ + "'");
    file.state.set(OrbitalTuple::from_bits(bits, L), term["coeff"].get<double>());
    ++pos;
  }
  return file;
}

void write_state(const std::filesystem::path& path, const CIState& state, const json& meta) {
  write_text(path, state_to_json(state, meta));
}

StateFile read_state(const std::filesystem::path& path) {
  try {
    return state_from_json(read_text(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------- permutations

json permutation_to_json(const OrbitalPermutation& perm) {
  return json{{"schema_version", kSchemaVersion}, {"perm", perm.values()}};
}

OrbitalPermutation permutation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("perm") || !j["perm"].is_array()) {
    throw IoError("permutation file needs a 'perm' array");
  }
  try {
    return OrbitalPermutation(j["perm"].get<std::vector<int>>());
  } catch (const json::exception& e) {
    throw IoError(std::string("permutation entries must be integers: ") + e.what());
  }
}

OrbitalPermutation read_permutation(const std::filesystem::path& path) {
  try {
    return permutation_from_json(json::parse(read_text(path)));
  } catch (const json::parse_error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_permutation(const std::filesystem::path& path, const OrbitalPermutation& perm) {
  write_text(path, permutation_to_json(perm).dump(2) + "\n");
}

// -------------------------------------------------------------------- manifest

json RunManifest::to_json() const {
  json j{{"schema_version", kSchemaVersion},
         {"subcommand", subcommand},
         {"flags", flags},
         {"tool_version", tool_version},
         {"timestamp", timestamp}};
  j["seed"] = seed ? json(*seed) : json(nullptr);
  j["prng"] = prng.empty() ? json(nullptr) : json(prng);
  return j;
}

std::string current_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path manifest_path(const std::filesystem::path& output) {
  return std::filesystem::path(output.string() + ".manifest.json");
}

void write_manifest(const std::filesystem::path& output, const RunManifest& manifest) {
  write_text(manifest_path(output), manifest.to_json().dump(2) + "\n");
}

}  // namespace mpslab
