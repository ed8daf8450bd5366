#include "mpslab/svd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mpslab/error.hpp"

namespace mpslab {

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return {};
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues();
}

Eigen::VectorXd sector_singular_values(const OccupationTensor& tensor, int k) {
  const Unfolding u = unfold(tensor, k);
  std::vector<double> all;
  for (const auto& block : sector_blocks(u, tensor.N())) {
    const Eigen::VectorXd s = singular_values(block.entries);
    all.insert(all.end(), s.data(), s.data() + s.size());
  }
  const auto len = static_cast<std::size_t>(std::min(u.matrix.rows(), u.matrix.cols()));
  std::sort(all.begin(), all.end(), std::greater<>());
  all.resize(len, 0.0);
  return Eigen::Map<const Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(len));
}

double entropy_bits(const Eigen::VectorXd& sigma) {
  const double total = sigma.squaredNorm();
  if (total <= 0.0) throw ZeroState("entropy of a zero spectrum");
  double s = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    const double w = sigma(i) * sigma(i) / total;
    if (w > 0.0) s -= w * std::log2(w);
  }
  return s;
}

}  // namespace mpslab
