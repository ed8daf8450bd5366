#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpslab/fock.hpp"
#include "mpslab/multiquad.hpp"
#include "mpslab/states.hpp"

namespace mpslab {

/// Largest square size accepted by mq_det (memoized Laplace is O(2^n n)).
inline constexpr std::size_t kMaxExactDet = 10;

/// Dense row-major matrix of MultiQuad entries over one prime universe.
class ExactMatrix {
 public:
  ExactMatrix(std::size_t rows, std::size_t cols, PrimeUniverse universe);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeUniverse& universe() const noexcept { return universe_; }

  const MultiQuad& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, MultiQuad value);

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeUniverse universe_;
  std::vector<MultiQuad> data_;
};

/// Exact determinant by Laplace expansion memoized over column subsets.
MultiQuad mq_det(const ExactMatrix& m);

/// Lifts the selected entries of a real matrix to +-sqrt(p), p in the pool.
/// Throws UnsupportedEntry if an entry is not such a value or if two entries
/// share a prime.
ExactMatrix lift_sqrt_primes(const Eigen::MatrixXd& values, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols, const PrimePool& pool);

enum class CertStatus { Pass, Fail };

struct RankCertificate {
  CertStatus status = CertStatus::Fail;
  /// min(rows, cols) on PASS, 0 on FAIL.
  std::size_t certified_rank = 0;
  /// Block-local indices of the nonzero minor (empty on FAIL).
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  MultiQuad determinant;
  std::size_t minors_tried = 0;
};

RankCertificate certify_full_rank(const SectorBlock& block, const PrimePool& pool);

struct BlockCertification {
  int n = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  /// Absent when the block's square size exceeds the certification cap.
  std::optional<RankCertificate> certificate;
};

struct CutCertification {
  int k = 0;
  std::vector<BlockCertification> blocks;
  std::size_t certified_total = 0;
  std::size_t skipped = 0;
  bool all_passed = true;
};

/// Certifies every sector block of the cut-k unfolding whose square size is
/// at most `max_dim`; larger blocks are reported as skipped.
CutCertification certify_cut(const OccupationTensor& tensor, int k, const PrimePool& pool,
                             std::size_t max_dim = kMaxExactDet);

}  // namespace mpslab
