#include "mpslab/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mpslab/error.hpp"
#include "mpslab/parallel.hpp"
#include "mpslab/svd.hpp"

namespace mpslab {

namespace {

constexpr double kGraphTol = 1e-10;

// Orbital `first` (then `second`, if given) moved to the front, the rest ascending.
OrbitalPermutation front_permutation(int L, int first, int second = 0) {
  std::vector<int> perm{first};
  if (second != 0) perm.push_back(second);
  for (int o = 1; o <= L; ++o) {
    if (o != first && o != second) perm.push_back(o);
  }
  return OrbitalPermutation(std::move(perm));
}

double leading_entropy(const CIState& state, const OrbitalPermutation& sigma, int k) {
  if (state.empty()) throw ZeroState("entropy of the zero state");
  const CIState moved = apply_permutation(state, sigma);
  return entropy_bits(sector_singular_values(ci_to_occupation(moved), k));
}

// Fiedler vector of one connected component (local indices).
Eigen::VectorXd component_fiedler(const Eigen::MatrixXd& weights) {
  const Eigen::Index m = weights.rows();
  Eigen::MatrixXd lap = -weights;
  lap.diagonal() = weights.rowwise().sum();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(lap);
  const Eigen::VectorXd& lambda = eig.eigenvalues();

  Eigen::Index d = 1;
  while (1 + d < m && lambda(1 + d) - lambda(1) <= kGraphTol) ++d;
  if (d == 1) return eig.eigenvectors().col(1);

  // Degenerate second eigenvalue: project a fixed reference vector onto the
  // eigenspace so the choice does not depend on the solver's basis.
  const Eigen::MatrixXd basis = eig.eigenvectors().middleCols(1, d);
  Eigen::VectorXd ref = Eigen::VectorXd::LinSpaced(m, 1.0, static_cast<double>(m));
  for (Eigen::Index attempt = -1; attempt < m; ++attempt) {
    if (attempt >= 0) ref = Eigen::VectorXd::Unit(m, attempt);
    Eigen::VectorXd v = basis * (basis.transpose() * ref);
    if (v.norm() > kGraphTol) return v / v.norm();
  }
  return basis.col(0);
}

// Local indices sorted by ascending Fiedler entry, ties by index, with the
// orientation whose orbital labels are lexicographically smaller.
std::vector<int> orient(const Eigen::VectorXd& v, const std::vector<int>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<long long> key(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    key[i] = std::llround(v(static_cast<Eigen::Index>(i)) / kGraphTol);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return key[a] != key[b] ? key[a] < key[b] : labels[a] < labels[b];
  });
  std::vector<int> forward;
  for (auto i : order) forward.push_back(labels[i]);
  std::vector<int> backward(forward.rbegin(), forward.rend());
  return std::min(forward, backward);
}

}  // namespace

// --------------------------------------------------------- OrbitalPermutation

OrbitalPermutation::OrbitalPermutation(std::vector<int> perm) : perm_(std::move(perm)) {
  const int L = static_cast<int>(perm_.size());
  if (L < 1) throw InvalidArgument("empty permutation");
  inverse_.assign(perm_.size(), 0);
  for (int pos = 1; pos <= L; ++pos) {
    const int o = perm_[static_cast<std::size_t>(pos - 1)];
    if (o < 1 || o > L || inverse_[static_cast<std::size_t>(o - 1)] != 0) {
      throw InvalidArgument("permutation is not a bijection of 1.." + std::to_string(L));
    }
    inverse_[static_cast<std::size_t>(o - 1)] = pos;
  }
}

OrbitalPermutation OrbitalPermutation::identity(int L) {
  std::vector<int> p(static_cast<std::size_t>(L));
  std::iota(p.begin(), p.end(), 1);
  return OrbitalPermutation(std::move(p));
}

OrbitalPermutation OrbitalPermutation::reversed() const {
  return OrbitalPermutation(std::vector<int>(perm_.rbegin(), perm_.rend()));
}

OrbitalPermutation OrbitalPermutation::then(const OrbitalPermutation& other) const {
  if (other.size() != size()) throw InvalidArgument("composing permutations of different size");
  std::vector<int> p(perm_.size());
  for (int k = 1; k <= size(); ++k) p[static_cast<std::size_t>(k - 1)] = (*this)(other(k));
  return OrbitalPermutation(std::move(p));
}

// ------------------------------------------------------------------ reordering

CIState apply_permutation(const CIState& state, const OrbitalPermutation& sigma) {
  if (sigma.size() != state.L()) {
    throw InvalidArgument("permutation of size " + std::to_string(sigma.size()) +
                          " applied to an L=" + std::to_string(state.L()) + " state");
  }
  CIState out(state.L(), state.N());
  std::vector<int> idx;
  for (const auto& [tuple, coeff] : state.terms()) {
    idx.clear();
    for (int o : tuple.indices()) idx.push_back(sigma.position_of(o));
    // Insertion sort; each adjacent swap of two orbitals flips the sign.
    bool odd = false;
    for (std::size_t i = 1; i < idx.size(); ++i) {
      for (std::size_t j = i; j > 0 && idx[j - 1] > idx[j]; --j) {
        std::swap(idx[j - 1], idx[j]);
        odd = !odd;
      }
    }
    out.set(OrbitalTuple(idx), odd ? -coeff : coeff);
  }
  return out;
}

OrbitalPermutation pairing_permutation(int N) {
  if (N < 1) throw InvalidArgument("pairing permutation needs N >= 1");
  std::vector<int> p;
  for (int k = 1; k <= N; ++k) {
    p.push_back(k);
    p.push_back(N + k);
  }
  return OrbitalPermutation(std::move(p));
}

// ------------------------------------------------------------------- entropies

double site_entropy(const CIState& state, int i) {
  const int L = state.L();
  if (i < 1 || i > L) throw InvalidArgument("orbital index out of range");
  if (L < 2) return 0.0;
  return leading_entropy(state, front_permutation(L, i), 1);
}

double pair_entropy(const CIState& state, int i, int j) {
  const int L = state.L();
  if (i < 1 || i > L || j < 1 || j > L || i == j) {
    throw InvalidArgument("pair entropy needs distinct orbitals in [1, L]");
  }
  if (L == 2) return 0.0;  // the pair is the whole (pure) system
  return leading_entropy(state, front_permutation(L, i, j), 2);
}

MutualInfoMatrix mutual_information_matrix(const CIState& state) {
  const int L = state.L();
  if (state.empty()) throw ZeroState("mutual information of the zero state");
  std::vector<double> site(static_cast<std::size_t>(L));
  parallel_for(site.size(), [&](std::size_t i) {
    site[i] = site_entropy(state, static_cast<int>(i) + 1);
  });

  std::vector<std::pair<int, int>> pairs;
  for (int i = 1; i <= L; ++i) {
    for (int j = i + 1; j <= L; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> joint(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    joint[p] = pair_entropy(state, pairs[p].first, pairs[p].second);
  });

  MutualInfoMatrix mi{Eigen::MatrixXd::Zero(L, L)};
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto [i, j] = pairs[p];
    const double v = std::max(
        0.0, 0.5 * (site[static_cast<std::size_t>(i - 1)] + site[static_cast<std::size_t>(j - 1)] -
                    joint[p]));
    mi.values(i - 1, j - 1) = v;
    mi.values(j - 1, i - 1) = v;
  }
  return mi;
}

// --------------------------------------------------------------------- Fiedler

OrbitalPermutation fiedler_order(const MutualInfoMatrix& mi) {
  const int L = mi.L();
  if (L < 2 || mi.values.cols() != L) throw InvalidArgument("Fiedler order needs a square L >= 2 matrix");

  // Connected components over edges heavier than the graph tolerance.
  std::vector<int> comp(static_cast<std::size_t>(L), -1);
  std::vector<std::vector<int>> members;
  for (int s = 0; s < L; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    const int id = static_cast<int>(members.size());
    members.emplace_back();
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = id;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      members.back().push_back(u);
      for (int v = 0; v < L; ++v) {
        if (comp[static_cast<std::size_t>(v)] < 0 && mi.values(u, v) > kGraphTol) {
          comp[static_cast<std::size_t>(v)] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(members.back().begin(), members.back().end());
  }

  std::vector<int> perm;
  for (const auto& group : members) {  // already ordered by smallest member
    std::vector<int> labels;
    for (int u : group) labels.push_back(u + 1);
    if (group.size() == 1) {
      perm.push_back(labels[0]);
      continue;
    }
    const auto m = static_cast<Eigen::Index>(group.size());
    Eigen::MatrixXd w(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index b = 0; b < m; ++b) {
        w(a, b) = a == b ? 0.0 : mi.values(group[static_cast<std::size_t>(a)], group[static_cast<std::size_t>(b)]);
      }
    }
    const auto local = orient(component_fiedler(w), labels);
    perm.insert(perm.end(), local.begin(), local.end());
  }
  return OrbitalPermutation(std::move(perm));
}

// ---------------------------------------------------------------------- search

bool OrderScore::better_than(const OrderScore& other) const {
  if (max_bond != other.max_bond) return max_bond < other.max_bond;
  return log2_sum < other.log2_sum - 1e-9;
}

bool OrderScore::same_as(const OrderScore& other) const {
  return !better_than(other) && !other.better_than(*this);
}

OrderScore score_ordering(const CIState& state, const OrbitalPermutation& sigma, double rel_tol) {
  const OccupationTensor t = ci_to_occupation(apply_permutation(state, sigma));
  OrderScore score;
  for (int k = 1; k < state.L(); ++k) {
    const int r = std::max(1, count_above(sector_singular_values(t, k), rel_tol));
    score.bond_dims.push_back(r);
    score.max_bond = std::max(score.max_bond, r);
    score.log2_sum += std::log2(static_cast<double>(r));
  }
  if (score.bond_dims.empty()) score.max_bond = 1;
  return score;
}

OrderSearchResult exhaustive_best_order(const CIState& state, double rel_tol) {
  const int L = state.L();
  if (L > kMaxExhaustiveL) {
    throw CapacityError("exhaustive ordering search is limited to L <= " +
                        std::to_string(kMaxExhaustiveL) + "; use the heuristic mode for L=" +
                        std::to_string(L));
  }
  // One representative per reversal pair: first label below last label.
  std::vector<std::vector<int>> candidates;
  std::vector<int> p(static_cast<std::size_t>(L));
  std::iota(p.begin(), p.end(), 1);
  do {
    if (L == 1 || p.front() < p.back()) candidates.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<OrderScore> scores(candidates.size());
  parallel_for(candidates.size(), [&](std::size_t i) {
    scores[i] = score_ordering(state, OrbitalPermutation(candidates[i]), rel_tol);
  });

  // Candidates are in lexicographic order, so the first strict minimum wins ties.
  std::size_t best = 0;
  bool invariant = true;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (!scores[i].same_as(scores[0])) invariant = false;
    if (scores[i].better_than(scores[best])) best = i;
  }
  return OrderSearchResult{OrbitalPermutation(candidates[best]), scores[best], candidates.size(),
                           invariant, true};
}

OrderSearchResult heuristic_best_order(const CIState& state, double rel_tol) {
  const int L = state.L();
  OrbitalPermutation current =
      L >= 2 ? fiedler_order(mutual_information_matrix(state)) : OrbitalPermutation::identity(L);
  OrderScore current_score = score_ordering(state, current, rel_tol);
  std::size_t evaluated = 1;
  bool invariant = true;

  constexpr int kMaxRounds = 1000;
  for (int round = 0; round < kMaxRounds; ++round) {
    std::vector<OrbitalPermutation> swaps;
    for (int a = 0; a < L; ++a) {
      for (int b = a + 1; b < L; ++b) {
        auto v = current.values();
        std::swap(v[static_cast<std::size_t>(a)], v[static_cast<std::size_t>(b)]);
        swaps.emplace_back(std::move(v));
      }
    }
    std::vector<OrderScore> scores(swaps.size());
    parallel_for(swaps.size(), [&](std::size_t i) { scores[i] = score_ordering(state, swaps[i], rel_tol); });
    evaluated += swaps.size();

    std::size_t best = swaps.size();
    for (std::size_t i = 0; i < swaps.size(); ++i) {
      if (!scores[i].same_as(current_score)) invariant = false;
      if (!scores[i].better_than(current_score)) continue;
      if (best == swaps.size() || scores[i].better_than(scores[best]) ||
          (scores[i].same_as(scores[best]) && swaps[i] < swaps[best])) {
        best = i;
      }
    }
    if (best == swaps.size()) break;
    current = swaps[best];
    current_score = scores[best];
  }
  return OrderSearchResult{current, current_score, evaluated, invariant, false};
}

}  // namespace mpslab
