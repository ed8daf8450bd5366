#pragma once

#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "mpslab/fock.hpp"
#include "mpslab/mps.hpp"

namespace mpslab {

/// Orbital reordering: new position k (1-based) holds old orbital perm[k-1].
class OrbitalPermutation {
 public:
  explicit OrbitalPermutation(std::vector<int> perm);  // throws unless a bijection of 1..L

  static OrbitalPermutation identity(int L);

  int size() const noexcept { return static_cast<int>(perm_.size()); }
  /// Old orbital at new position `pos`.
  int operator()(int pos) const { return perm_.at(static_cast<std::size_t>(pos - 1)); }
  /// New position of old orbital `orbital`.
  int position_of(int orbital) const { return inverse_.at(static_cast<std::size_t>(orbital - 1)); }

  const std::vector<int>& values() const noexcept { return perm_; }
  OrbitalPermutation inverse() const { return OrbitalPermutation(inverse_); }
  OrbitalPermutation reversed() const;
  /// (this then other): position k holds this(other(k)).
  OrbitalPermutation then(const OrbitalPermutation& other) const;

  bool operator==(const OrbitalPermutation& o) const { return perm_ == o.perm_; }
  auto operator<=>(const OrbitalPermutation& o) const { return perm_ <=> o.perm_; }

 private:
  std::vector<int> perm_;
  std::vector<int> inverse_;
};

/// Relabels the basis; each coefficient picks up the parity of the
/// permutation that re-sorts its relabeled orbital indices.
CIState apply_permutation(const CIState& state, const OrbitalPermutation& sigma);

/// (phi_1, phi_{N+1}, phi_2, phi_{N+2}, ..., phi_N, phi_{2N}).
OrbitalPermutation pairing_permutation(int N);

/// Von Neumann entropies in bits of orbital i, and of the orbital pair {i, j}.
double site_entropy(const CIState& state, int i);
double pair_entropy(const CIState& state, int i, int j);

/// I_ij = (S_i + S_j - S_ij) / 2, symmetric with zero diagonal, nonnegative.
struct MutualInfoMatrix {
  Eigen::MatrixXd values;
  int L() const { return static_cast<int>(values.rows()); }
};

MutualInfoMatrix mutual_information_matrix(const CIState& state);

/// Spectral ordering by the Fiedler vector of the Laplacian D - I.
/// Disconnected graphs are ordered component by component (by smallest
/// member), each component by its own Fiedler vector.
OrbitalPermutation fiedler_order(const MutualInfoMatrix& mi);

/// Lexicographic objective: smallest maximal bond dimension, then the
/// smallest sum of log2 bond dimensions.
struct OrderScore {
  int max_bond = 0;
  double log2_sum = 0.0;
  std::vector<int> bond_dims;

  /// Strict ordering with 1e-9 tolerance on log2_sum.
  bool better_than(const OrderScore& other) const;
  bool same_as(const OrderScore& other) const;
};

/// Numerical bond profile r_1..r_{L-1} of the reordered state.
OrderScore score_ordering(const CIState& state, const OrbitalPermutation& sigma,
                          double rel_tol = kDefaultRankTol);

inline constexpr int kMaxExhaustiveL = 8;

struct OrderSearchResult {
  OrbitalPermutation best;
  OrderScore score;
  std::size_t evaluated = 0;
  /// Every evaluated ordering scored the same.
  bool invariant = false;
  bool exhaustive = true;
};

/// Enumerates all L!/2 orderings (reversal identified) for L <= 8; ties go to
/// the lexicographically smallest permutation.
OrderSearchResult exhaustive_best_order(const CIState& state, double rel_tol = kDefaultRankTol);

/// Best-effort: greedy transpositions from the Fiedler order until no swap
/// improves the score.
OrderSearchResult heuristic_best_order(const CIState& state, double rel_tol = kDefaultRankTol);

}  // namespace mpslab
