#include "mpslab/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "mpslab/error.hpp"

namespace mpslab {

namespace {

__extension__ typedef unsigned __int128 u128;

void check_orbital_count(int L, int N) {
  if (L < 1 || L > kMaxOrbitals) {
    throw InvalidArgument("orbital count L=" + std::to_string(L) + " outside [1, 64]");
  }
  if (N < 1 || N > L) {
    throw InvalidArgument("electron count N=" + std::to_string(N) + " outside [1, L=" +
                          std::to_string(L) + "]");
  }
}

void check_dense(int L) {
  if (L > kDenseCap) {
    throw CapacityError("dense tensor requested for L=" + std::to_string(L) +
                        " exceeds the cap L <= " + std::to_string(kDenseCap));
  }
}

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<Bits> fixed_popcount_words(int width, int count) {
  std::vector<Bits> out;
  if (count < 0 || count > width) return out;
  out.reserve(binomial(width, count));
  if (count == 0) {
    out.push_back(0);
    return out;
  }
  // Gosper's hack walks same-popcount words in increasing order.
  Bits word = count == 64 ? ~Bits{0} : (Bits{1} << count) - 1;
  const Bits limit = width == 64 ? ~Bits{0} : (Bits{1} << width);
  while (true) {
    out.push_back(word);
    const Bits low = word & (~word + 1);
    const Bits ripple = word + low;
    if (ripple == 0) break;
    word = (((ripple ^ word) >> 2) / low) | ripple;
    if (width < 64 && word >= limit) break;
  }
  return out;
}

std::string bits_to_string(Bits bits, int L) {
  std::string text(static_cast<std::size_t>(L), '0');
  for (int pos = 0; pos < L; ++pos) {
    if ((bits >> (L - 1 - pos)) & 1U) text[static_cast<std::size_t>(pos)] = '1';
  }
  return text;
}

Bits bits_from_string(std::string_view text) {
  if (text.empty() || text.size() > static_cast<std::size_t>(kMaxOrbitals)) {
    throw InvalidArgument("occupation string must have 1..64 characters");
  }
  Bits bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw InvalidArgument("occupation string '" + std::string(text) + "' contains '" +
                            std::string(1, c) + "'");
    }
    bits = (bits << 1) | static_cast<Bits>(c == '1');
  }
  return bits;
}

// ---------------------------------------------------------------- OrbitalTuple

OrbitalTuple::OrbitalTuple(std::vector<int> indices) : indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] < 1) throw InvalidArgument("orbital indices are 1-based");
    if (i > 0 && indices_[i] <= indices_[i - 1]) {
      throw InvalidArgument("orbital tuple must be strictly increasing");
    }
  }
}

OrbitalTuple OrbitalTuple::from_bits(Bits bits, int L) {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(std::popcount(bits)));
  for (int orb = 1; orb <= L; ++orb) {
    if ((bits >> (L - orb)) & 1U) idx.push_back(orb);
  }
  OrbitalTuple t;
  t.indices_ = std::move(idx);
  return t;
}

Bits OrbitalTuple::to_bits(int L) const {
  Bits bits = 0;
  for (int orb : indices_) bits |= Bits{1} << (L - orb);
  return bits;
}

void OrbitalTuple::check(int L, int N) const {
  if (indices_.size() != static_cast<std::size_t>(N)) {
    throw InvalidArgument("tuple of length " + std::to_string(indices_.size()) +
                          " in an N=" + std::to_string(N) + " state");
  }
  if (!indices_.empty() && indices_.back() > L) {
    throw InvalidArgument("orbital " + std::to_string(indices_.back()) + " exceeds L=" +
                          std::to_string(L));
  }
}

// -------------------------------------------------------------------- CIState

CIState::CIState(int L, int N) : L_(L), N_(N) { check_orbital_count(L, N); }

void CIState::set(const OrbitalTuple& tuple, double coeff) {
  tuple.check(L_, N_);
  if (coeff == 0.0) {
    terms_.erase(tuple);
  } else {
    terms_[tuple] = coeff;
  }
}

double CIState::get(const OrbitalTuple& tuple) const {
  auto it = terms_.find(tuple);
  return it == terms_.end() ? 0.0 : it->second;
}

double CIState::norm() const {
  double acc = 0.0;
  for (const auto& [t, c] : terms_) acc += c * c;
  return std::sqrt(acc);
}

CIState CIState::scaled(double factor) const {
  CIState out(L_, N_);
  for (const auto& [t, c] : terms_) out.set(t, c * factor);
  return out;
}

// ----------------------------------------------------------- OccupationTensor

OccupationTensor::OccupationTensor(int L, int N) : L_(L), N_(N) {
  check_orbital_count(L, N);
  check_dense(L);
  psi_.assign(std::size_t{1} << L, 0.0);
}

OccupationTensor::OccupationTensor(int L, int N, std::vector<double> psi)
    : L_(L), N_(N), psi_(std::move(psi)) {
  check_orbital_count(L, N);
  check_dense(L);
  if (psi_.size() != (std::size_t{1} << L)) {
    throw InvalidArgument("tensor of length " + std::to_string(psi_.size()) +
                          " does not match 2^L for L=" + std::to_string(L));
  }
}

bool OccupationTensor::sector_consistent() const {
  for (Bits b = 0; b < psi_.size(); ++b) {
    if (psi_[b] != 0.0 && std::popcount(b) != N_) return false;
  }
  return true;
}

double OccupationTensor::norm() const {
  double acc = 0.0;
  for (double v : psi_) acc += v * v;
  return std::sqrt(acc);
}

// ---------------------------------------------------------------- conversions

OccupationTensor ci_to_occupation(const CIState& state) {
  OccupationTensor t(state.L(), state.N());
  for (const auto& [tuple, coeff] : state.terms()) t[tuple.to_bits(state.L())] = coeff;
  return t;
}

CIState occupation_to_ci(const OccupationTensor& tensor) {
  CIState state(tensor.L(), tensor.N());
  const auto psi = tensor.values();
  for (Bits b = 0; b < psi.size(); ++b) {
    if (psi[b] == 0.0) continue;
    if (std::popcount(b) != tensor.N()) {
      throw MalformedTensor("nonzero entry at " + bits_to_string(b, tensor.L()) +
                            " outside the N=" + std::to_string(tensor.N()) + " sector");
    }
    state.set(OrbitalTuple::from_bits(b, tensor.L()), psi[b]);
  }
  return state;
}

Unfolding unfold(const OccupationTensor& tensor, int k) {
  const int L = tensor.L();
  if (k < 1 || k > L - 1) {
    throw InvalidArgument("cut k=" + std::to_string(k) + " outside [1, " + std::to_string(L - 1) +
                          "]");
  }
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Index rows = Eigen::Index{1} << k;
  const Eigen::Index cols = Eigen::Index{1} << (L - k);
  // psi[r << (L-k) | c] is exactly the row-major layout of the unfolding.
  Unfolding u{L, k, Eigen::Map<const RowMajor>(tensor.values().data(), rows, cols)};
  return u;
}

OccupationTensor refold(const Unfolding& unfolding, int N) {
  const auto& m = unfolding.matrix;
  std::vector<double> psi(static_cast<std::size_t>(m.size()));
  const int right = unfolding.L - unfolding.k;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      psi[(static_cast<std::size_t>(r) << right) | static_cast<std::size_t>(c)] = m(r, c);
    }
  }
  return OccupationTensor(unfolding.L, N, std::move(psi));
}

std::vector<SectorBlock> sector_blocks(const Unfolding& unfolding, int N) {
  const int k = unfolding.k;
  const int right = unfolding.L - k;
  std::vector<SectorBlock> blocks;
  for (int n = std::max(0, N - right); n <= std::min(k, N); ++n) {
    SectorBlock block;
    block.k = k;
    block.n = n;
    block.rows = fixed_popcount_words(k, n);
    block.cols = fixed_popcount_words(right, N - n);
    block.entries.resize(static_cast<Eigen::Index>(block.rows.size()),
                         static_cast<Eigen::Index>(block.cols.size()));
    for (std::size_t i = 0; i < block.rows.size(); ++i) {
      for (std::size_t j = 0; j < block.cols.size(); ++j) {
        block.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            unfolding.matrix(static_cast<Eigen::Index>(block.rows[i]),
                             static_cast<Eigen::Index>(block.cols[j]));
      }
    }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

std::uint64_t max_sector_rank(int L, int N, int k) {
  if (k < 0 || k > L) throw InvalidArgument("cut outside [0, L]");
  std::uint64_t total = 0;
  for (int n = std::max(0, N - (L - k)); n <= std::min(k, N); ++n) {
    total += std::min(binomial(k, n), binomial(L - k, N - n));
  }
  return total;
}

}  // namespace mpslab
