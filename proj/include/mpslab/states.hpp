#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mpslab/fock.hpp"

namespace mpslab {

/// Largest exclusive sieve bound accepted by primes_below.
inline constexpr std::uint64_t kSieveCap = std::uint64_t{1} << 31;

/// Ascending distinct primes below an exclusive bound.
struct PrimePool {
  std::vector<std::uint64_t> primes;
  std::uint64_t bound = 0;

  bool contains(std::uint64_t p) const;
};

PrimePool primes_below(std::uint64_t bound);

/// 2^(N+L), the prime bound used for prime states.
std::uint64_t prime_state_bound(int L, int N);

/// Coefficients sqrt(p) for C(L, N) pairwise distinct primes p < 2^(N+L),
/// assigned to tuples in lexicographic order. Without a seed the smallest
/// primes are used in ascending order; with a seed the primes are a
/// Fisher-Yates draw (Rng) from the whole pool.
CIState prime_state(int L, int N, std::optional<std::uint64_t> seed = std::nullopt,
                    bool normalize = false);

/// Rows of `orbitals` are the occupied orbitals expanded over phi_1..phi_L;
/// lambda_J is the N x N minor on columns J.
CIState slater_expand(const Eigen::MatrixXd& orbitals);

/// (phi_k + phi_{k+N}) / sqrt(2) for k = 1..N, L = 2N.
Eigen::MatrixXd bell_orbitals(int N);
CIState bell_state(int N);

/// Normalized state with standard-normal coefficients on every tuple.
CIState random_state(int L, int N, std::uint64_t seed);

}  // namespace mpslab
