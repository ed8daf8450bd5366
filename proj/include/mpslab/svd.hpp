#pragma once

#include <Eigen/Dense>

#include "mpslab/fock.hpp"

namespace mpslab {

/// Descending singular values of a dense matrix (full SVD, values only).
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);

/// Descending singular values of unfold(tensor, k), computed block by block
/// over particle-number sectors. The result has length min(2^k, 2^(L-k));
/// dimensions no sector can reach are exact zeros.
Eigen::VectorXd sector_singular_values(const OccupationTensor& tensor, int k);

/// -sum w log2 w with w = sigma^2 / sum sigma^2; zero weights are skipped.
double entropy_bits(const Eigen::VectorXd& sigma);

}  // namespace mpslab
