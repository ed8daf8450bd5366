#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mpslab/fock.hpp"

namespace mpslab {

/// Default relative threshold: a singular value counts iff sigma > tol * sigma_1.
inline constexpr double kDefaultRankTol = 1e-10;

/// Site tensor A_k[0], A_k[1], each r_{k-1} x r_k.
struct MPSCore {
  std::array<Eigen::MatrixXd, 2> mats;

  Eigen::Index left_dim() const { return mats[0].rows(); }
  Eigen::Index right_dim() const { return mats[0].cols(); }
};

class MPS {
 public:
  explicit MPS(std::vector<MPSCore> cores);  // validates the bond chain

  int L() const noexcept { return static_cast<int>(cores_.size()); }
  const std::vector<MPSCore>& cores() const noexcept { return cores_; }
  const MPSCore& core(int site) const { return cores_.at(static_cast<std::size_t>(site - 1)); }

  /// r_1 ... r_{L-1}.
  std::vector<int> bond_dims() const;
  int max_bond_dim() const;

 private:
  std::vector<MPSCore> cores_;
};

/// Result of a left-to-right TT-SVD sweep.
struct TTDecomposition {
  MPS mps;
  /// Singular values of the sweep matrix at each cut, descending, before truncation.
  std::vector<std::vector<double>> cut_spectra;
};

/// Counts sigma_i > rel_tol * sigma_1 in a descending spectrum.
int count_above(const Eigen::VectorXd& sigma, double rel_tol);

TTDecomposition tt_svd_full(const OccupationTensor& tensor, double rel_tol = kDefaultRankTol);
MPS tt_svd(const OccupationTensor& tensor, double rel_tol = kDefaultRankTol);

/// A_1[mu_1] ... A_L[mu_L] for the bitstring `bits` (mu_1 = most significant of L bits).
double contract(const MPS& mps, Bits bits);
OccupationTensor reconstruct(const MPS& mps, int N);

/// Bond-dimension-2 cores for bell_state(N) in the paired ordering
/// (phi_1, phi_{N+1}, phi_2, phi_{N+2}, ...). The first core carries the
/// 2^(-N/2) normalization.
MPS bell_mps_explicit(int N);

}  // namespace mpslab
