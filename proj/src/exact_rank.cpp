#include "mpslab/exact_rank.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "mpslab/error.hpp"

namespace mpslab {

namespace {

// Prime p with entry = +-sqrt(p), or throws.
std::uint64_t entry_prime(double x, const PrimePool& pool) {
  if (!std::isfinite(x) || x == 0.0) {
    throw UnsupportedEntry("entry " + std::to_string(x) + " is not +-sqrt(p)");
  }
  const double sq = x * x;
  const auto p = static_cast<std::uint64_t>(std::llround(sq));
  if (!pool.contains(p) || std::abs(sq - static_cast<double>(p)) > 1e-9 * static_cast<double>(p)) {
    throw UnsupportedEntry("entry " + std::to_string(x) + " is not +-sqrt(p) for a pool prime");
  }
  return p;
}

// Advances an ascending r-subset of {0..n-1}; false after the last one.
bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t r = idx.size();
  std::size_t pos = r;
  while (pos > 0 && idx[pos - 1] == n - r + pos - 1) --pos;
  if (pos == 0) return false;
  ++idx[pos - 1];
  for (std::size_t q = pos; q < r; ++q) idx[q] = idx[q - 1] + 1;
  return true;
}

std::vector<std::size_t> iota_vec(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols, PrimeUniverse universe)
    : rows_(rows), cols_(cols), universe_(std::move(universe)), data_(rows * cols) {}

void ExactMatrix::set(std::size_t r, std::size_t c, MultiQuad value) {
  if (r >= rows_ || c >= cols_) throw InvalidArgument("ExactMatrix index out of range");
  if (value.universe() && universe_ && value.universe() != universe_ &&
      *value.universe() != *universe_) {
    throw InvalidArgument("entry uses a different prime universe");
  }
  data_[r * cols_ + c] = std::move(value);
}

MultiQuad mq_det(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InvalidArgument("determinant of a non-square matrix");
  if (n > kMaxExactDet) {
    throw CapacityError("exact determinant of size " + std::to_string(n) + " exceeds cap " +
                        std::to_string(kMaxExactDet));
  }
  if (n == 0) return MultiQuad(mpq_class(1));

  // minors[S] = det of rows 0..|S|-1 restricted to the columns in S, expanded
  // along its last row. Only the previous level is kept alive.
  std::vector<MultiQuad> minors(std::size_t{1} << n);
  minors[0] = MultiQuad(mpq_class(1));
  std::vector<std::vector<std::uint32_t>> by_size(n + 1);
  for (std::uint32_t s = 0; s < minors.size(); ++s) by_size[std::popcount(s)].push_back(s);

  for (std::size_t size = 1; size <= n; ++size) {
    const std::size_t row = size - 1;
    for (std::uint32_t mask : by_size[size]) {
      MultiQuad acc;
      std::size_t pos = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!((mask >> j) & 1U)) continue;
        const MultiQuad& a = m(row, j);
        const MultiQuad& sub = minors[mask & ~(std::uint32_t{1} << j)];
        if (!a.is_zero() && !sub.is_zero()) {
          const MultiQuad term = a * sub;
          acc = ((row + pos) % 2 == 0) ? acc + term : acc - term;
        }
        ++pos;
      }
      minors[mask] = std::move(acc);
    }
    for (std::uint32_t mask : by_size[size - 1]) minors[mask] = MultiQuad();
  }
  return minors.back();
}

ExactMatrix lift_sqrt_primes(const Eigen::MatrixXd& values, const std::vector<std::size_t>& rows,
                             const std::vector<std::size_t>& cols, const PrimePool& pool) {
  std::vector<std::uint64_t> primes;
  std::vector<double> signs;
  primes.reserve(rows.size() * cols.size());
  for (auto r : rows) {
    for (auto c : cols) {
      const double x = values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      primes.push_back(entry_prime(x, pool));
      signs.push_back(x < 0 ? -1.0 : 1.0);
    }
  }
  {
    auto sorted = primes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw UnsupportedEntry("block entries are not pairwise distinct square roots");
    }
  }
  auto universe = make_universe(primes);
  ExactMatrix out(rows.size(), cols.size(), universe);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::size_t at = i * cols.size() + j;
      out.set(i, j, MultiQuad::sqrt_prime(universe, at, mpq_class(signs[at] < 0 ? -1 : 1)));
    }
  }
  return out;
}

RankCertificate certify_full_rank(const SectorBlock& block, const PrimePool& pool) {
  const auto R = static_cast<std::size_t>(block.entries.rows());
  const auto C = static_cast<std::size_t>(block.entries.cols());
  const std::size_t r = std::min(R, C);
  if (r == 0) throw InvalidArgument("empty sector block");
  if (r > kMaxExactDet) {
    throw CapacityError("block square size " + std::to_string(r) + " exceeds cap " +
                        std::to_string(kMaxExactDet));
  }

  // Validate every entry up front: the theorem needs distinct sqrt(p) throughout.
  {
    std::unordered_set<std::uint64_t> seen;
    for (Eigen::Index i = 0; i < block.entries.rows(); ++i) {
      for (Eigen::Index j = 0; j < block.entries.cols(); ++j) {
        if (!seen.insert(entry_prime(block.entries(i, j), pool)).second) {
          throw UnsupportedEntry("block entries are not pairwise distinct square roots");
        }
      }
    }
  }

  RankCertificate cert;
  std::vector<std::size_t> rows = iota_vec(r);
  std::vector<std::size_t> cols = iota_vec(r);
  const bool tall = R > C;
  auto& moving = tall ? rows : cols;
  const std::size_t moving_n = tall ? R : C;

  do {
    ++cert.minors_tried;
    MultiQuad det = mq_det(lift_sqrt_primes(block.entries, rows, cols, pool));
    if (!det.is_zero()) {
      cert.status = CertStatus::Pass;
      cert.certified_rank = r;
      cert.rows = rows;
      cert.cols = cols;
      cert.determinant = std::move(det);
      return cert;
    }
  } while (next_subset(moving, moving_n));
  return cert;
}

CutCertification certify_cut(const OccupationTensor& tensor, int k, const PrimePool& pool,
                             std::size_t max_dim) {
  CutCertification out;
  out.k = k;
  for (const auto& block : sector_blocks(unfold(tensor, k), tensor.N())) {
    BlockCertification bc;
    bc.n = block.n;
    bc.rows = block.rows.size();
    bc.cols = block.cols.size();
    if (std::min(bc.rows, bc.cols) <= std::min(max_dim, kMaxExactDet)) {
      bc.certificate = certify_full_rank(block, pool);
      out.certified_total += bc.certificate->certified_rank;
      if (bc.certificate->status == CertStatus::Fail) out.all_passed = false;
    } else {
      ++out.skipped;
    }
    out.blocks.push_back(std::move(bc));
  }
  return out;
}

}  // namespace mpslab
