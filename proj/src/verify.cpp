#include "mpslab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "mpslab/error.hpp"
#include "mpslab/exact_rank.hpp"
#include "mpslab/ordering.hpp"
#include "mpslab/parallel.hpp"
#include "mpslab/prng.hpp"
#include "mpslab/states.hpp"
#include "mpslab/svd.hpp"

namespace mpslab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string dims_string(const std::vector<int>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s + "]";
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

nlohmann::json VerifyReport::to_json() const {
  nlohmann::json j{{"schema_version", 1}, {"pipeline", pipeline}, {"passed", passed()}};
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    j["checks"].push_back({{"name", c.name}, {"status", c.passed ? "PASS" : "FAIL"}, {"detail", c.detail}});
  }
  j["stats"] = stats;
  return j;
}

VerifyReport verify_bell(int N, double rel_tol) {
  if (N < 1 || N > kMaxVerifyBellN) {
    throw InvalidArgument("verify bell supports 1 <= N <= " + std::to_string(kMaxVerifyBellN));
  }
  const auto start = Clock::now();
  VerifyReport report;
  report.pipeline = "bell";

  const CIState bell = bell_state(N);
  const MPS canonical = tt_svd(ci_to_occupation(bell), rel_tol);
  const int expected = 1 << N;
  report.checks.push_back({"canonical bond dimension 2^N", canonical.max_bond_dim() == expected,
                           "max " + std::to_string(canonical.max_bond_dim()) + ", expected " +
                               std::to_string(expected) + ", dims " +
                               dims_string(canonical.bond_dims())});

  const CIState paired_state = apply_permutation(bell, pairing_permutation(N));
  const OccupationTensor paired_tensor = ci_to_occupation(paired_state);
  const MPS paired = tt_svd(paired_tensor, rel_tol);
  report.checks.push_back({"paired bond dimension 2", paired.max_bond_dim() == 2,
                           "max " + std::to_string(paired.max_bond_dim()) + ", dims " +
                               dims_string(paired.bond_dims())});

  const OccupationTensor explicit_tensor = reconstruct(bell_mps_explicit(N), N);
  double worst = 0.0;
  for (Bits b = 0; b < explicit_tensor.dim(); ++b) {
    worst = std::max(worst, std::abs(explicit_tensor[b] - paired_tensor[b]));
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max abs deviation %.3e", worst);
  report.checks.push_back({"explicit cores match reordered state", worst <= 1e-12, buf});

  report.stats = {{"N", N}, {"L", 2 * N}, {"canonical_bond_dims", canonical.bond_dims()},
                  {"paired_bond_dims", paired.bond_dims()}, {"explicit_max_abs_error", worst}};
  report.seconds = seconds_since(start);
  return report;
}

VerifyReport verify_prime(int L, int N, const PrimeVerifyOptions& options) {
  if (options.mode == OrderingMode::Exhaustive && L > kMaxExhaustiveVerifyL) {
    throw InvalidArgument("exhaustive prime verification is limited to L <= " +
                          std::to_string(kMaxExhaustiveVerifyL));
  }
  const auto start = Clock::now();
  const CIState state = prime_state(L, N, options.state_seed);
  const PrimePool pool = primes_below(prime_state_bound(L, N));

  std::vector<std::vector<int>> orderings;
  std::vector<int> p(static_cast<std::size_t>(L));
  std::iota(p.begin(), p.end(), 1);
  if (options.mode == OrderingMode::Exhaustive) {
    do {
      orderings.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  } else {
    Rng rng(options.seed);
    orderings.push_back(p);  // canonical order is always checked
    while (orderings.size() < std::max<std::size_t>(options.samples, 1)) {
      rng.shuffle(std::span<int>(p));
      orderings.push_back(p);
    }
  }

  struct Outcome {
    bool ranks_ok = true;
    std::size_t blocks_certified = 0;
    std::size_t blocks_failed = 0;
    std::size_t blocks_skipped = 0;
  };
  std::vector<Outcome> outcomes(orderings.size());
  parallel_for(orderings.size(), [&](std::size_t i) {
    const OccupationTensor t =
        ci_to_occupation(apply_permutation(state, OrbitalPermutation(orderings[i])));
    Outcome& o = outcomes[i];
    for (int k = 1; k < L; ++k) {
      const auto rank = count_above(sector_singular_values(t, k), options.rel_tol);
      if (static_cast<std::uint64_t>(rank) != max_sector_rank(L, N, k)) o.ranks_ok = false;
      if (options.certify_max_dim == 0) continue;
      const CutCertification cut = certify_cut(t, k, pool, options.certify_max_dim);
      o.blocks_skipped += cut.skipped;
      for (const auto& b : cut.blocks) {
        if (!b.certificate) continue;
        ++o.blocks_certified;
        if (b.certificate->status == CertStatus::Fail) ++o.blocks_failed;
      }
    }
  });

  std::size_t rank_pass = 0, certified = 0, failed = 0, skipped = 0;
  for (const auto& o : outcomes) {
    rank_pass += o.ranks_ok;
    certified += o.blocks_certified;
    failed += o.blocks_failed;
    skipped += o.blocks_skipped;
  }

  VerifyReport report;
  report.pipeline = "prime";
  const std::string total = std::to_string(orderings.size());
  report.checks.push_back({"maximal rank at every cut", rank_pass == orderings.size(),
                           std::to_string(rank_pass) + "/" + total + " orderings"});
  report.checks.push_back({"exact full-rank certificates", failed == 0,
                           std::to_string(certified - failed) + "/" + std::to_string(certified) +
                               " blocks certified, " + std::to_string(skipped) +
                               " over the size cap"});
  std::vector<std::uint64_t> expected;
  for (int k = 1; k < L; ++k) expected.push_back(max_sector_rank(L, N, k));
  report.stats = {{"L", L},
                  {"N", N},
                  {"mode", options.mode == OrderingMode::Exhaustive ? "exhaustive" : "sampled"},
                  {"orderings", orderings.size()},
                  {"orderings_passed", rank_pass},
                  {"max_sector_ranks", expected},
                  {"blocks_certified", certified},
                  {"blocks_failed", failed},
                  {"blocks_skipped", skipped},
                  {"certify_max_dim", options.certify_max_dim}};
  if (options.mode == OrderingMode::Sampled) report.stats["seed"] = options.seed;
  report.seconds = seconds_since(start);
  return report;
}

}  // namespace mpslab
