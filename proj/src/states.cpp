#include "mpslab/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mpslab/error.hpp"
#include "mpslab/prng.hpp"

namespace mpslab {

namespace {

// Visits every N-subset of {1..L} in lexicographic order.
template <class Fn>
void for_each_tuple(int L, int N, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(N));
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    fn(idx);
    int pos = N - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == L - N + pos + 1) --pos;
    if (pos < 0) return;
    ++idx[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < N; ++q) {
      idx[static_cast<std::size_t>(q)] = idx[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
}

}  // namespace

bool PrimePool::contains(std::uint64_t p) const {
  return std::binary_search(primes.begin(), primes.end(), p);
}

PrimePool primes_below(std::uint64_t bound) {
  if (bound < 2) throw InvalidArgument("prime bound must be at least 2");
  if (bound > kSieveCap) {
    throw CapacityError("prime bound " + std::to_string(bound) + " exceeds sieve cap 2^31");
  }
  PrimePool pool;
  pool.bound = bound;
  if (bound > 2) pool.primes.push_back(2);
  // Odd-only sieve: slot i stands for 2i + 1.
  const std::uint64_t slots = bound / 2;
  std::vector<bool> composite(slots, false);
  for (std::uint64_t i = 1; i < slots; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    if (p >= bound) break;
    pool.primes.push_back(p);
    for (std::uint64_t m = p * p; m < bound; m += 2 * p) composite[m / 2] = true;
  }
  return pool;
}

std::uint64_t prime_state_bound(int L, int N) {
  if (N + L >= 64) throw CapacityError("prime bound 2^(N+L) overflows");
  return std::uint64_t{1} << (N + L);
}

CIState prime_state(int L, int N, std::optional<std::uint64_t> seed, bool normalize) {
  CIState state(L, N);
  const std::uint64_t needed = binomial(L, N);
  const std::uint64_t bound = prime_state_bound(L, N);
  if (bound > kSieveCap) {
    throw CapacityError("prime state L=" + std::to_string(L) + ", N=" + std::to_string(N) +
                        " needs primes below 2^" + std::to_string(N + L) +
                        ", beyond the sieve cap 2^31");
  }
  PrimePool pool = primes_below(bound);
  if (pool.primes.size() < needed) {
    throw InsufficientPrimes("need " + std::to_string(needed) + " primes below " +
                             std::to_string(bound) + ", found " +
                             std::to_string(pool.primes.size()));
  }
  if (seed) {
    Rng rng(*seed);
    rng.partial_shuffle(std::span<std::uint64_t>(pool.primes), needed);
  }
  std::size_t next = 0;
  for_each_tuple(L, N, [&](const std::vector<int>& idx) {
    state.set(OrbitalTuple(idx), std::sqrt(static_cast<double>(pool.primes[next++])));
  });
  if (normalize) return state.scaled(1.0 / state.norm());
  return state;
}

CIState slater_expand(const Eigen::MatrixXd& orbitals) {
  const int N = static_cast<int>(orbitals.rows());
  const int L = static_cast<int>(orbitals.cols());
  if (N > L) throw InvalidArgument("more occupied orbitals than basis functions");
  CIState state(L, N);
  Eigen::MatrixXd minor(N, N);
  for_each_tuple(L, N, [&](const std::vector<int>& cols) {
    for (int j = 0; j < N; ++j) minor.col(j) = orbitals.col(cols[static_cast<std::size_t>(j)] - 1);
    state.set(OrbitalTuple(cols), minor.partialPivLu().determinant());
  });
  return state;
}

Eigen::MatrixXd bell_orbitals(int N) {
  if (N < 1) throw InvalidArgument("Bell state needs N >= 1");
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(N, 2 * N);
  const double h = 1.0 / std::sqrt(2.0);
  for (int k = 0; k < N; ++k) {
    c(k, k) = h;
    c(k, k + N) = h;
  }
  return c;
}

CIState bell_state(int N) { return slater_expand(bell_orbitals(N)); }

CIState random_state(int L, int N, std::uint64_t seed) {
  CIState state(L, N);
  Rng rng(seed);
  for_each_tuple(L, N, [&](const std::vector<int>& idx) { state.set(OrbitalTuple(idx), rng.normal()); });
  return state.scaled(1.0 / state.norm());
}

}  // namespace mpslab
