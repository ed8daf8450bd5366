#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpslab/mps.hpp"

namespace mpslab {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::string pipeline;
  std::vector<CheckResult> checks;
  nlohmann::json stats = nlohmann::json::object();
  double seconds = 0.0;

  bool passed() const;
  nlohmann::json to_json() const;
};

inline constexpr int kMaxVerifyBellN = 5;

/// Canonical bond dimension 2^N, paired bond dimension 2, and explicit
/// cores equal to the reordered Slater expansion (1e-12 absolute).
VerifyReport verify_bell(int N, double rel_tol = kDefaultRankTol);

enum class OrderingMode { Exhaustive, Sampled };

struct PrimeVerifyOptions {
  OrderingMode mode = OrderingMode::Exhaustive;
  std::size_t samples = 50;
  /// Drives the sampled orderings.
  std::uint64_t seed = 0;
  /// Prime draw for the state; absent means ascending primes.
  std::optional<std::uint64_t> state_seed;
  /// Sector blocks with square size above this are not certified exactly.
  std::size_t certify_max_dim = 6;
  double rel_tol = kDefaultRankTol;
};

inline constexpr int kMaxExhaustiveVerifyL = 6;

/// Every cut of every checked ordering keeps the maximal sector rank, and
/// every certifiable sector block has an exact nonzero maximal minor.
VerifyReport verify_prime(int L, int N, const PrimeVerifyOptions& options = {});

}  // namespace mpslab
