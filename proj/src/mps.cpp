#include "mpslab/mps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mpslab/error.hpp"

namespace mpslab {

MPS::MPS(std::vector<MPSCore> cores) : cores_(std::move(cores)) {
  if (cores_.empty()) throw InvalidArgument("MPS needs at least one core");
  for (std::size_t k = 0; k < cores_.size(); ++k) {
    const auto& c = cores_[k];
    if (c.mats[0].rows() != c.mats[1].rows() || c.mats[0].cols() != c.mats[1].cols()) {
      throw InvalidArgument("core " + std::to_string(k + 1) + " has mismatched A[0], A[1]");
    }
    if (k > 0 && cores_[k - 1].right_dim() != c.left_dim()) {
      throw InvalidArgument("bond between sites " + std::to_string(k) + " and " +
                            std::to_string(k + 1) + " does not chain");
    }
  }
  if (cores_.front().left_dim() != 1 || cores_.back().right_dim() != 1) {
    throw InvalidArgument("boundary bond dimensions must be 1");
  }
}

std::vector<int> MPS::bond_dims() const {
  std::vector<int> dims;
  for (std::size_t k = 0; k + 1 < cores_.size(); ++k) {
    dims.push_back(static_cast<int>(cores_[k].right_dim()));
  }
  return dims;
}

int MPS::max_bond_dim() const {
  const auto dims = bond_dims();
  return dims.empty() ? 1 : *std::max_element(dims.begin(), dims.end());
}

int count_above(const Eigen::VectorXd& sigma, double rel_tol) {
  if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
  const double cutoff = rel_tol * sigma(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

TTDecomposition tt_svd_full(const OccupationTensor& tensor, double rel_tol) {
  if (rel_tol < 0.0) throw InvalidArgument("rel_tol must be nonnegative");
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const int L = tensor.L();

  std::vector<MPSCore> cores;
  std::vector<std::vector<double>> spectra;
  // Remainder in row-major layout: row = (alpha_{k-1}, mu_k), column = mu_{k+1..L}.
  std::vector<double> rest(tensor.values().begin(), tensor.values().end());
  Eigen::Index left = 1;

  for (int k = 1; k < L; ++k) {
    const Eigen::Index rows = left * 2;
    const Eigen::Index cols = static_cast<Eigen::Index>(rest.size()) / rows;
    const Eigen::MatrixXd m = Eigen::Map<const RowMajor>(rest.data(), rows, cols);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    spectra.emplace_back(sigma.data(), sigma.data() + sigma.size());
    const int kept = count_above(sigma, rel_tol);
    const Eigen::Index r = std::max(1, kept);

    MPSCore core;
    for (int mu = 0; mu < 2; ++mu) {
      core.mats[static_cast<std::size_t>(mu)].resize(left, r);
      for (Eigen::Index a = 0; a < left; ++a) {
        core.mats[static_cast<std::size_t>(mu)].row(a) = svd.matrixU().row(a * 2 + mu).head(r);
      }
      // A vanishing remainder keeps a single zero channel.
      if (kept == 0) core.mats[static_cast<std::size_t>(mu)].setZero();
    }
    cores.push_back(std::move(core));

    const RowMajor next = sigma.head(r).asDiagonal() * svd.matrixV().leftCols(r).transpose();
    rest.assign(next.data(), next.data() + next.size());
    left = r;
  }

  MPSCore last;
  for (int mu = 0; mu < 2; ++mu) {
    last.mats[static_cast<std::size_t>(mu)].resize(left, 1);
    for (Eigen::Index a = 0; a < left; ++a) {
      last.mats[static_cast<std::size_t>(mu)](a, 0) = rest[static_cast<std::size_t>(a * 2 + mu)];
    }
  }
  cores.push_back(std::move(last));
  return TTDecomposition{MPS(std::move(cores)), std::move(spectra)};
}

MPS tt_svd(const OccupationTensor& tensor, double rel_tol) {
  return tt_svd_full(tensor, rel_tol).mps;
}

double contract(const MPS& mps, Bits bits) {
  const int L = mps.L();
  if (L < kMaxOrbitals && (bits >> L) != 0) {
    throw InvalidArgument("bitstring longer than the MPS (L=" + std::to_string(L) + ")");
  }
  Eigen::RowVectorXd acc = Eigen::RowVectorXd::Ones(1);
  for (int site = 1; site <= L; ++site) {
    const auto mu = static_cast<std::size_t>((bits >> (L - site)) & 1U);
    acc = acc * mps.core(site).mats[mu];
  }
  return acc(0);
}

OccupationTensor reconstruct(const MPS& mps, int N) {
  OccupationTensor t(mps.L(), N);
  for (Bits b = 0; b < t.dim(); ++b) t[b] = contract(mps, b);
  return t;
}

MPS bell_mps_explicit(int N) {
  if (N < 1) throw InvalidArgument("Bell MPS needs N >= 1");
  const int L = 2 * N;
  auto delta = [](int a, int mu) { return a == mu ? 1.0 : 0.0; };
  std::vector<MPSCore> cores(static_cast<std::size_t>(L));
  const double scale = std::pow(2.0, -0.5 * N);

  for (int mu = 0; mu < 2; ++mu) {
    const auto m = static_cast<std::size_t>(mu);
    cores[0].mats[m].resize(1, 2);
    cores[0].mats[m] << delta(0, mu) * scale, delta(1, mu) * scale;

    cores[static_cast<std::size_t>(L - 1)].mats[m].resize(2, 1);
    cores[static_cast<std::size_t>(L - 1)].mats[m] << delta(1, mu), delta(0, mu);

    for (int site = 2; site < L; ++site) {
      auto& a = cores[static_cast<std::size_t>(site - 1)].mats[m];
      a.resize(2, 2);
      if (site % 2 == 0) {
        a << delta(1, mu), 0.0, 0.0, delta(0, mu);
      } else {
        a << delta(0, mu), delta(1, mu), delta(0, mu), delta(1, mu);
      }
    }
  }
  return MPS(std::move(cores));
}

}  // namespace mpslab
