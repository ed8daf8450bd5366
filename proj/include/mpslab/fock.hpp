#pragma once

// Occupation-number representation of N-electron states in L spin-orbitals.
//
// Conventions used throughout the library:
//  * orbitals are labelled 1..L;
//  * an occupation bitstring mu_1 ... mu_L is encoded as an unsigned integer
//    with mu_1 as the most significant of L bits, so the string "1100"
//    (L = 4) is the integer 12;
//  * the basis determinant for the tuple (i_1 < ... < i_N) lists its
//    orbitals in increasing order; all signs are relative to that.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace mpslab {

using Bits = std::uint64_t;

/// Largest L for which dense 2^L tensors are materialized.
inline constexpr int kDenseCap = 20;
/// Largest L representable in a Bits word.
inline constexpr int kMaxOrbitals = 64;

std::uint64_t binomial(int n, int k);

/// Bitstrings of the given width with exactly `count` set bits, ascending.
std::vector<Bits> fixed_popcount_words(int width, int count);

std::string bits_to_string(Bits bits, int L);
/// Parses a '0'/'1' string; its length is the orbital count.
Bits bits_from_string(std::string_view text);

/// Strictly increasing orbital indices (1-based) of one determinant.
class OrbitalTuple {
 public:
  OrbitalTuple() = default;
  explicit OrbitalTuple(std::vector<int> indices);  // throws unless strictly increasing and >= 1

  static OrbitalTuple from_bits(Bits bits, int L);
  Bits to_bits(int L) const;

  const std::vector<int>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  int operator[](std::size_t i) const { return indices_[i]; }

  /// Throws InvalidArgument unless the tuple has length N and entries in [1, L].
  void check(int L, int N) const;

  auto operator<=>(const OrbitalTuple&) const = default;

 private:
  std::vector<int> indices_;
};

/// Sparse full-CI expansion: tuple -> coefficient. Exact zeros are never stored.
class CIState {
 public:
  using Terms = std::map<OrbitalTuple, double>;

  CIState(int L, int N);

  int L() const noexcept { return L_; }
  int N() const noexcept { return N_; }

  void set(const OrbitalTuple& tuple, double coeff);
  double get(const OrbitalTuple& tuple) const;

  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  double norm() const;
  CIState scaled(double factor) const;

  bool operator==(const CIState&) const = default;

 private:
  int L_;
  int N_;
  Terms terms_;
};

/// Dense coefficient vector psi over all 2^L occupation bitstrings.
class OccupationTensor {
 public:
  OccupationTensor(int L, int N);
  OccupationTensor(int L, int N, std::vector<double> psi);

  int L() const noexcept { return L_; }
  int N() const noexcept { return N_; }
  std::size_t dim() const noexcept { return psi_.size(); }

  double operator[](Bits bits) const { return psi_[bits]; }
  double& operator[](Bits bits) { return psi_[bits]; }
  std::span<const double> values() const noexcept { return psi_; }

  /// True iff psi vanishes on every bitstring with popcount != N.
  bool sector_consistent() const;
  double norm() const;

  bool operator==(const OccupationTensor&) const = default;

 private:
  int L_;
  int N_;
  std::vector<double> psi_;
};

/// Matrix with row index (mu_1..mu_k) and column index (mu_{k+1}..mu_L).
struct Unfolding {
  int L = 0;
  int k = 0;
  Eigen::MatrixXd matrix;
};

/// Fixed left-particle-count block of an unfolding.
struct SectorBlock {
  int k = 0;
  int n = 0;
  std::vector<Bits> rows;
  std::vector<Bits> cols;
  Eigen::MatrixXd entries;
};

OccupationTensor ci_to_occupation(const CIState& state);
CIState occupation_to_ci(const OccupationTensor& tensor);

Unfolding unfold(const OccupationTensor& tensor, int k);
OccupationTensor refold(const Unfolding& unfolding, int N);

std::vector<SectorBlock> sector_blocks(const Unfolding& unfolding, int N);

/// Sum over feasible n of min(C(k, n), C(L - k, N - n)).
std::uint64_t max_sector_rank(int L, int N, int k);

}  // namespace mpslab
