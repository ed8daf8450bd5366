#pragma once

// Brute-force reference implementations used only by the tests. They share
// no code paths with the library routines they check.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mpslab/fock.hpp"
#include "mpslab/ordering.hpp"

namespace mpslab::oracle {

/// Sign of a permutation of 0..n-1 via its cycle decomposition.
inline int cycle_sign(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(p[i])) {
      seen[i] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// Determinant by the Leibniz sum over all n! permutations.
inline double leibniz_det(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  double det = 0.0;
  do {
    double term = cycle_sign(p);
    for (int r = 0; r < n; ++r) term *= m(r, p[static_cast<std::size_t>(r)]);
    det += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

/// Antisymmetrized N-fold tensor: ordered index tuple -> amplitude. Each
/// determinant |phi_T> contributes sign(pi) at every reordering pi(T).
using OrderedTensor = std::map<std::vector<int>, double>;

inline OrderedTensor antisymmetrize(const CIState& state) {
  OrderedTensor out;
  const int N = state.N();
  for (const auto& [tuple, coeff] : state.terms()) {
    std::vector<int> p(static_cast<std::size_t>(N));
    std::iota(p.begin(), p.end(), 0);
    do {
      std::vector<int> ordered;
      for (int m = 0; m < N; ++m) ordered.push_back(tuple[static_cast<std::size_t>(p[static_cast<std::size_t>(m)])]);
      out[ordered] += cycle_sign(p) * coeff;
    } while (std::next_permutation(p.begin(), p.end()));
  }
  return out;
}

/// Reorders by relabelling every index of the antisymmetric tensor and reading
/// the amplitude off the ascending representative of each determinant.
inline CIState relabel_by_antisymmetrization(const CIState& state, const OrbitalPermutation& sigma) {
  OrderedTensor relabelled;
  for (const auto& [ordered, amp] : antisymmetrize(state)) {
    std::vector<int> moved;
    for (int o : ordered) moved.push_back(sigma.position_of(o));
    relabelled[moved] += amp;
  }
  CIState out(state.L(), state.N());
  for (const auto& [ordered, amp] : relabelled) {
    if (std::is_sorted(ordered.begin(), ordered.end())) out.set(OrbitalTuple(ordered), amp);
  }
  return out;
}

/// Slater expansion of the wedge product of the rows, by brute force: expand
/// psi_1 x ... x psi_N over all orderings of the rows and read the ascending
/// components.
inline CIState wedge_expand(const Eigen::MatrixXd& rows) {
  const int N = static_cast<int>(rows.rows());
  const int L = static_cast<int>(rows.cols());
  CIState out(L, N);
  for (Bits b = 0; b < (Bits{1} << L); ++b) {
    if (std::popcount(b) != N) continue;
    const OrbitalTuple t = OrbitalTuple::from_bits(b, L);
    Eigen::MatrixXd minor(N, N);
    for (int r = 0; r < N; ++r) {
      for (int c = 0; c < N; ++c) minor(r, c) = rows(r, t[static_cast<std::size_t>(c)] - 1);
    }
    out.set(t, leibniz_det(minor));
  }
  return out;
}

/// Singular values of the dense unfolding by one-sided Jacobi.
inline Eigen::VectorXd dense_singular_values(const OccupationTensor& t, int k) {
  const Unfolding u = unfold(t, k);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u.matrix);
  return svd.singularValues();
}

inline int dense_rank(const OccupationTensor& t, int k, double rel_tol = 1e-10) {
  const Eigen::VectorXd s = dense_singular_values(t, k);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > rel_tol * s(0);
  return r;
}

/// Entropy in bits from squared weights, used to check spectra by hand.
inline double entropy_of_weights(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) {
    if (x > 0) s -= x * std::log2(x);
  }
  return s;
}

/// Random state with a random subset of nonzero coefficients.
inline CIState random_sparse_state(int L, int N, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  std::bernoulli_distribution keep(0.7);
  CIState s(L, N);
  for (Bits b = 0; b < (Bits{1} << L); ++b) {
    if (std::popcount(b) == N && keep(gen)) s.set(OrbitalTuple::from_bits(b, L), normal(gen));
  }
  if (s.empty()) s.set(OrbitalTuple::from_bits((Bits{1} << N) - 1, L), 1.0);
  return s;
}

inline OrbitalPermutation random_permutation(int L, std::mt19937_64& gen) {
  std::vector<int> p(static_cast<std::size_t>(L));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), gen);
  return OrbitalPermutation(std::move(p));
}

}  // namespace mpslab::oracle
