#pragma once

// Exact arithmetic in Q(sqrt(p_1), ..., sqrt(p_s)) for distinct primes p_j.
//
// An element is a finite sum  sum_S c_S * prod_{j in S} sqrt(p_j)  with
// rational c_S and S ranging over subsets of a shared prime universe. The
// square-root monomials are linearly independent over Q, so an element is
// zero exactly when no coefficient is stored.

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mpslab {

inline constexpr std::size_t kMaxUniversePrimes = 128;

/// Ordered set of distinct primes shared by the elements of one computation.
using PrimeUniverse = std::shared_ptr<const std::vector<std::uint64_t>>;

PrimeUniverse make_universe(std::vector<std::uint64_t> primes);

/// Subset of universe indices; bit i stands for sqrt(universe[i]).
struct Monomial {
  std::array<std::uint64_t, 2> words{};

  static Monomial single(std::size_t index);
  bool test(std::size_t index) const { return (words[index / 64] >> (index % 64)) & 1U; }
  bool empty() const { return words[0] == 0 && words[1] == 0; }
  int degree() const { return std::popcount(words[0]) + std::popcount(words[1]); }

  friend Monomial operator^(const Monomial& a, const Monomial& b) {
    return {{a.words[0] ^ b.words[0], a.words[1] ^ b.words[1]}};
  }
  friend Monomial operator&(const Monomial& a, const Monomial& b) {
    return {{a.words[0] & b.words[0], a.words[1] & b.words[1]}};
  }
  auto operator<=>(const Monomial&) const = default;
};

/// Closed rational interval.
struct Interval {
  mpq_class lo;
  mpq_class hi;

  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
  bool excludes_zero() const { return lo > 0 || hi < 0; }
};

class MultiQuad {
 public:
  using Terms = std::map<Monomial, mpq_class>;

  MultiQuad() = default;
  explicit MultiQuad(const mpq_class& rational);

  /// coeff * sqrt(universe[index]).
  static MultiQuad sqrt_prime(PrimeUniverse universe, std::size_t index,
                              const mpq_class& coeff = 1);

  const PrimeUniverse& universe() const noexcept { return universe_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Nearest-double evaluation (long double accumulation).
  double to_double() const;

  /// Rigorous enclosure: each sqrt of a monomial is bracketed to 2^-bits.
  Interval enclose(unsigned bits) const;

  /// Human-readable form, e.g. "sqrt(14) - sqrt(15)".
  std::string to_string() const;

  MultiQuad operator-() const;
  friend MultiQuad operator+(const MultiQuad& a, const MultiQuad& b);
  friend MultiQuad operator-(const MultiQuad& a, const MultiQuad& b);
  friend MultiQuad operator*(const MultiQuad& a, const MultiQuad& b);
  friend bool operator==(const MultiQuad& a, const MultiQuad& b);

 private:
  /// Product of the primes in a monomial.
  mpz_class radicand(const Monomial& m) const;
  void add_term(const Monomial& m, const mpq_class& c);

  PrimeUniverse universe_;
  Terms terms_;
};

MultiQuad mq_add(const MultiQuad& a, const MultiQuad& b);
MultiQuad mq_mul(const MultiQuad& a, const MultiQuad& b);
bool mq_is_zero(const MultiQuad& a);

}  // namespace mpslab
