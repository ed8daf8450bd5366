// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mpslab/mpslab.hpp"
#include "support/oracles.hpp"

using namespace mpslab;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome bell_collapse() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (int N = 2; N <= 5; ++N) {
    const CIState bell = bell_state(N);
    const int canonical = tt_svd(ci_to_occupation(bell), 1e-10).max_bond_dim();
    const int paired =
        tt_svd(ci_to_occupation(apply_permutation(bell, pairing_permutation(N))), 1e-10).max_bond_dim();
    ok &= canonical == (1 << N) && paired == 2;
    detail += "N=" + std::to_string(N) + ":" + std::to_string(canonical) + "->" + std::to_string(paired) + " ";
  }
  const double secs = seconds_since(start);
  ok &= secs < 5.0;
  return {ok, detail + fmt("in %.2fs (limit 5s)", secs)};
}

Outcome explicit_cores() {
  double worst = 0.0;
  for (int N = 1; N <= 5; ++N) {
    const OccupationTensor expected = ci_to_occupation(apply_permutation(bell_state(N), pairing_permutation(N)));
    const OccupationTensor got = reconstruct(bell_mps_explicit(N), N);
    for (Bits b = 0; b < got.dim(); ++b) worst = std::max(worst, std::abs(got[b] - expected[b]));
  }
  return {worst <= 1e-12, fmt("N=1..5 max abs deviation %.3e (limit 1e-12)", worst)};
}

Outcome ordering_invariance() {
  const auto start = Clock::now();
  std::size_t total = 0, failures = 0;
  for (auto [L, N] : {std::pair{4, 2}, std::pair{6, 3}}) {
    const CIState s = prime_state(L, N);
    std::vector<int> p(static_cast<std::size_t>(L));
    std::iota(p.begin(), p.end(), 1);
    do {
      ++total;
      const OccupationTensor t = ci_to_occupation(apply_permutation(s, OrbitalPermutation(p)));
      for (int k = 1; k < L; ++k) {
        const auto rank = static_cast<std::uint64_t>(count_above(sector_singular_values(t, k), 1e-10));
        if (rank != max_sector_rank(L, N, k)) {
          ++failures;
          break;
        }
      }
    } while (std::next_permutation(p.begin(), p.end()));
  }
  const double secs = seconds_since(start);
  return {failures == 0 && total == 744 && secs < 60.0,
          std::to_string(total - failures) + "/" + std::to_string(total) +
              " orderings (24 + 720) at maximal rank, " + fmt("%.2fs (limit 60s)", secs)};
}

Outcome exact_certification() {
  std::size_t states = 0, blocks = 0, fails = 0, skipped = 0, mismatches = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (int L = 2; L <= 8; ++L) {
      for (int N = 1; N < L; ++N) {
        const CIState s = prime_state(L, N, seed);
        const PrimePool pool = primes_below(prime_state_bound(L, N));
        const OccupationTensor t = ci_to_occupation(s);
        ++states;
        for (int k = 1; k < L; ++k) {
          const CutCertification cut = certify_cut(t, k, pool, 10);
          skipped += cut.skipped;
          for (const auto& b : cut.blocks) {
            if (!b.certificate) continue;
            ++blocks;
            fails += b.certificate->status == CertStatus::Fail;
          }
          const int numerical = count_above(sector_singular_values(t, k), 1e-10);
          if (cut.skipped != 0 || cut.certified_total != static_cast<std::size_t>(numerical)) ++mismatches;
        }
      }
    }
  }
  return {fails == 0 && mismatches == 0 && skipped == 0,
          std::to_string(states) + " states (L=2..8, 100 seeds), " + std::to_string(blocks) +
              " blocks certified, " + std::to_string(fails) + " FAIL, " + std::to_string(mismatches) +
              " rank mismatches"};
}

Outcome figure_two() {
  const auto start = Clock::now();
  const int L = 12, N = 6, k = 6;
  const CIState s = prime_state(L, N, 2024);
  std::mt19937_64 gen(7);
  const std::vector<std::pair<std::string, OrbitalPermutation>> orders = {
      {"canonical", OrbitalPermutation::identity(L)},
      {"fiedler", fiedler_order(mutual_information_matrix(s))},
      {"random", oracle::random_permutation(L, gen)}};
  bool ok = true;
  std::string detail;
  for (const auto& [label, perm] : orders) {
    const SpectrumRecord rec = singular_spectrum(s, perm, k, label);
    const int above = numerical_rank(rec, 1e-10);
    ok &= rec.sigmas.size() == 64 && above == 64;
    detail += label + " " + std::to_string(above) + "/64 ratio " + fmt("%.2e", rec.sigmas.back() / rec.sigmas.front()) +
              "; ";
  }
  const double secs = seconds_since(start);
  ok &= secs < 10.0;
  return {ok, detail + fmt("%.2fs (limit 10s)", secs)};
}

Outcome sign_oracle() {
  std::mt19937_64 gen(20240601);
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int L = 1 + static_cast<int>(gen() % 6);
    const int N = 1 + static_cast<int>(gen() % static_cast<unsigned>(L));
    const CIState s = oracle::random_sparse_state(L, N, gen);
    const OrbitalPermutation sigma = oracle::random_permutation(L, gen);
    agree += apply_permutation(s, sigma) == oracle::relabel_by_antisymmetrization(s, sigma);
  }
  return {agree == 100, std::to_string(agree) + "/100 pairs match exactly (L<=6)"};
}

Outcome conservation() {
  std::vector<CIState> states;
  for (int N = 1; N <= 5; ++N) states.push_back(bell_state(N));
  for (auto [L, N] : {std::pair{4, 2}, {6, 3}, {8, 4}, {10, 5}, {12, 6}}) states.push_back(prime_state(L, N, 1));
  std::mt19937_64 gen(99);
  for (int i = 0; i < 20; ++i) {
    const int L = 2 + static_cast<int>(gen() % 11);
    const int N = 1 + static_cast<int>(gen() % static_cast<unsigned>(L));
    states.push_back(oracle::random_sparse_state(L, N, gen));
  }
  double unfold_err = 0.0, perm_err = 0.0, tt_err = 0.0;
  for (const CIState& s : states) {
    const double norm = s.norm();
    const OccupationTensor t = ci_to_occupation(s);
    for (int k = 1; k < s.L(); ++k) unfold_err = std::max(unfold_err, std::abs(unfold(t, k).matrix.norm() - norm) / norm);
    const CIState moved = apply_permutation(s, oracle::random_permutation(s.L(), gen));
    perm_err = std::max(perm_err, std::abs(moved.norm() - norm) / norm);
    const OccupationTensor back = reconstruct(tt_svd(t, 1e-14), s.N());
    double diff = 0.0;
    for (Bits b = 0; b < t.dim(); ++b) diff += (back[b] - t[b]) * (back[b] - t[b]);
    tt_err = std::max(tt_err, std::sqrt(diff) / t.norm());
  }
  const bool ok = unfold_err <= 1e-12 && perm_err <= 1e-12 && tt_err <= 1e-12;
  return {ok, std::to_string(states.size()) + " states: unfold " + fmt("%.1e", unfold_err) + ", permute " +
                  fmt("%.1e", perm_err) + ", TT reconstruction " + fmt("%.1e", tt_err) + " (limit 1e-12)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"bell-collapse", bell_collapse},
      {"explicit-core-equivalence", explicit_cores},
      {"ordering-invariant-maximal-rank", ordering_invariance},
      {"exact-certification", exact_certification},
      {"singular-value-spectrum-properties", figure_two},
      {"sign-oracle-equivalence", sign_oracle},
      {"conservation", conservation},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.passed;
    std::printf("%s %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
