#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpslab/mpslab.hpp"

namespace mpslab::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

/// Raised for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json collect_flags(const CLI::App* sub) {
  json flags = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->count() == 0) continue;
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    if (opt->get_type_size() == 0) {
      flags[name] = true;
    } else if (opt->get_expected_max() > 1) {
      flags[name] = opt->results();
    } else {
      flags[name] = opt->results().back();
    }
  }
  return flags;
}

RunManifest manifest_for(const std::string& name, const CLI::App* sub,
                         std::optional<std::uint64_t> seed = std::nullopt) {
  RunManifest m;
  m.subcommand = name;
  m.flags = collect_flags(sub);
  m.seed = seed;
  if (seed) m.prng = std::string(Rng::kAlgorithm);
  m.timestamp = current_timestamp();
  return m;
}

// Writes `text` to `path` (plus its manifest) or to `out` when path is empty.
void emit(const std::string& path, const std::string& text, const RunManifest& manifest,
          std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  write_text(path, text);
  write_manifest(path, manifest);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

struct ResolvedOrder {
  std::string label;
  OrbitalPermutation perm;
};

// canonical | fiedler | pairing | best | random:<seed> | perm:<file> | <file>
ResolvedOrder resolve_order(const std::string& spec, const CIState& state) {
  const int L = state.L();
  if (spec == "canonical") return {"canonical", OrbitalPermutation::identity(L)};
  if (spec == "fiedler") {
    if (L < 2) return {"fiedler", OrbitalPermutation::identity(L)};
    return {"fiedler", fiedler_order(mutual_information_matrix(state))};
  }
  if (spec == "pairing") {
    if (L % 2 != 0) throw UsageError("pairing order needs an even orbital count");
    return {"pairing", pairing_permutation(L / 2)};
  }
  if (spec == "best") {
    auto result = L <= kMaxExhaustiveL ? exhaustive_best_order(state) : heuristic_best_order(state);
    return {"best", result.best};
  }
  if (spec.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(spec.substr(7));
    } catch (const std::exception&) {
      throw UsageError("bad random order seed in '" + spec + "'");
    }
    std::vector<int> p(static_cast<std::size_t>(L));
    std::iota(p.begin(), p.end(), 1);
    Rng rng(seed);
    rng.shuffle(std::span<int>(p));
    return {spec, OrbitalPermutation(std::move(p))};
  }
  const std::string file = spec.rfind("perm:", 0) == 0 ? spec.substr(5) : spec;
  if (!fs::exists(file)) throw UsageError("unknown ordering '" + spec + "'");
  return {"perm:" + fs::path(file).stem().string(), read_permutation(file)};
}

// ------------------------------------------------------------------ commands

int cmd_gen(const CLI::App* sub, const std::string& kind, std::optional<int> L, std::optional<int> N,
            std::optional<std::uint64_t> seed, bool normalize, const std::string& out_path,
            std::ostream& out) {
  CIState state(1, 1);
  json meta{{"kind", kind}};
  if (kind == "bell") {
    if (!N) throw UsageError("--kind bell needs --N");
    if (L && *L != 2 * *N) throw UsageError("a Bell state has L = 2N");
    state = bell_state(*N);
  } else if (kind == "prime") {
    if (!L || !N) throw UsageError("--kind prime needs --L and --N");
    state = prime_state(*L, *N, seed, normalize);
    meta["prime_bound"] = prime_state_bound(*L, *N);
  } else {
    if (!L || !N) throw UsageError("--kind random needs --L and --N");
    if (!seed) seed = 0;
    state = random_state(*L, *N, *seed);
  }
  if (normalize && kind != "prime") state = state.scaled(1.0 / state.norm());
  meta["normalized"] = normalize || kind == "random";
  if (seed) {
    meta["seed"] = *seed;
    meta["prng"] = std::string(Rng::kAlgorithm);
  }
  emit(out_path, state_to_json(state, meta), manifest_for("gen", sub, seed), out);
  return kExitOk;
}

int cmd_tt(const CLI::App* sub, const std::string& state_path, double tol,
           const std::string& report_path, std::ostream& out) {
  const CIState state = read_state(state_path).state;
  const OccupationTensor t = ci_to_occupation(state);
  const TTDecomposition tt = tt_svd_full(t, tol);
  const OccupationTensor back = reconstruct(tt.mps, state.N());
  double diff = 0.0;
  for (Bits b = 0; b < t.dim(); ++b) diff += (back[b] - t[b]) * (back[b] - t[b]);
  const double norm = t.norm();
  const double rel_err = norm > 0.0 ? std::sqrt(diff) / norm : std::sqrt(diff);

  json report{{"schema_version", kSchemaVersion},
              {"L", state.L()},
              {"N", state.N()},
              {"rel_tol", tol},
              {"bond_dims", tt.mps.bond_dims()},
              {"max_bond_dim", tt.mps.max_bond_dim()},
              {"reconstruction_error", rel_err}};
  report["cuts"] = json::array();
  const auto dims = tt.mps.bond_dims();
  for (std::size_t i = 0; i < tt.cut_spectra.size(); ++i) {
    report["cuts"].push_back({{"k", i + 1},
                              {"singular_values", tt.cut_spectra[i].size()},
                              {"kept", dims[i]}});
  }
  if (!report_path.empty()) {
    emit(report_path, report.dump(2) + "\n", manifest_for("tt", sub), out);
  }
  out << "bond_dims [";
  for (std::size_t i = 0; i < dims.size(); ++i) out << (i ? "," : "") << dims[i];
  out << "] max " << tt.mps.max_bond_dim() << " reconstruction_error "
      << fmt("%.3e", rel_err) << "\n";
  return kExitOk;
}

int cmd_reorder(const CLI::App* sub, const std::string& state_path, const std::string& perm_spec,
                const std::string& out_path, std::ostream& out) {
  StateFile file = read_state(state_path);
  const ResolvedOrder order = resolve_order(perm_spec, file.state);
  const CIState moved = apply_permutation(file.state, order.perm);
  json meta = file.meta;
  meta["reordered_by"] = order.perm.values();
  emit(out_path, state_to_json(moved, meta), manifest_for("reorder", sub), out);
  return kExitOk;
}

int cmd_spectrum(const CLI::App* sub, const std::string& state_path, int cut,
                 std::vector<std::string> orders, const std::string& out_path, double tol,
                 std::ostream& out) {
  const CIState state = read_state(state_path).state;
  if (orders.empty()) orders.push_back("canonical");
  std::vector<SpectrumRecord> records;
  for (const auto& spec : orders) {
    const ResolvedOrder order = resolve_order(spec, state);
    records.push_back(singular_spectrum(state, order.perm, cut, order.label));
  }
  std::ostringstream csv;
  write_csv(csv, records);
  emit(out_path, csv.str(), manifest_for("spectrum", sub), out);
  if (!out_path.empty()) {
    for (const auto& rec : records) {
      const int rank = numerical_rank(rec, tol);
      const double ratio = rank > 0 ? rec.sigmas[static_cast<std::size_t>(rank - 1)] / rec.sigmas[0] : 0.0;
      out << rec.ordering_label << ": cut " << rec.k << ", " << rank << "/" << rec.sigmas.size()
          << " above tol, sigma_min/sigma_max " << fmt("%.6e", ratio) << ", entropy "
          << fmt("%.6f", entanglement_entropy(rec)) << " bits\n";
    }
  }
  return kExitOk;
}

int cmd_certify(const CLI::App* sub, const std::string& state_path, std::optional<int> cut,
                bool all_cuts, std::size_t max_dim, const std::string& report_path,
                std::ostream& out) {
  if (!cut && !all_cuts) throw UsageError("certify needs --cut k or --all-cuts");
  const CIState state = read_state(state_path).state;
  const OccupationTensor t = ci_to_occupation(state);
  const PrimePool pool = primes_below(prime_state_bound(state.L(), state.N()));

  std::vector<int> cuts;
  if (all_cuts) {
    for (int k = 1; k < state.L(); ++k) cuts.push_back(k);
  } else {
    cuts.push_back(*cut);
  }
  bool ok = true;
  json report{{"schema_version", kSchemaVersion}, {"L", state.L()}, {"N", state.N()},
              {"max_dim", max_dim}, {"cuts", json::array()}};
  for (int k : cuts) {
    const CutCertification cc = certify_cut(t, k, pool, max_dim);
    ok = ok && cc.all_passed;
    json jc{{"k", k},
            {"certified_total", cc.certified_total},
            {"max_sector_rank", max_sector_rank(state.L(), state.N(), k)},
            {"skipped", cc.skipped},
            {"blocks", json::array()}};
    for (const auto& b : cc.blocks) {
      json jb{{"n", b.n}, {"rows", b.rows}, {"cols", b.cols}};
      if (!b.certificate) {
        jb["status"] = "SKIPPED";
      } else {
        const auto& c = *b.certificate;
        jb["status"] = c.status == CertStatus::Pass ? "PASS" : "FAIL";
        jb["certified_rank"] = c.certified_rank;
        jb["minors_tried"] = c.minors_tried;
        if (c.status == CertStatus::Pass) {
          jb["minor_rows"] = c.rows;
          jb["minor_cols"] = c.cols;
          jb["determinant_terms"] = c.determinant.terms().size();
          jb["determinant_value"] = c.determinant.to_double();
          if (c.determinant.terms().size() <= 8) jb["determinant"] = c.determinant.to_string();
        }
      }
      jc["blocks"].push_back(std::move(jb));
    }
    report["cuts"].push_back(std::move(jc));
    out << "cut " << k << ": certified rank " << cc.certified_total << " of "
        << max_sector_rank(state.L(), state.N(), k) << (cc.skipped ? " (some blocks skipped)" : "")
        << (cc.all_passed ? "" : " FAIL") << "\n";
  }
  report["passed"] = ok;
  if (report_path.empty()) {
    out << report.dump(2) << "\n";
  } else {
    emit(report_path, report.dump(2) + "\n", manifest_for("certify", sub), out);
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_search(const CLI::App* sub, const std::string& state_path, const std::string& objective,
               const std::string& mode, const std::string& out_path, std::ostream& out) {
  if (objective != "maxrank") throw UsageError("unknown objective '" + objective + "'");
  const CIState state = read_state(state_path).state;
  const bool exhaustive = mode == "exhaustive" || (mode == "auto" && state.L() <= kMaxExhaustiveL);
  if (exhaustive && state.L() > kMaxExhaustiveL) {
    throw UsageError("exhaustive search supports L <= " + std::to_string(kMaxExhaustiveL) +
                     "; use --mode heuristic");
  }
  const OrderSearchResult r = exhaustive ? exhaustive_best_order(state) : heuristic_best_order(state);
  json j = permutation_to_json(r.best);
  j["objective"] = objective;
  j["mode"] = exhaustive ? "exhaustive" : "heuristic";
  j["max_bond_dim"] = r.score.max_bond;
  j["log2_bond_sum"] = r.score.log2_sum;
  j["bond_dims"] = r.score.bond_dims;
  j["evaluated"] = r.evaluated;
  j["invariant"] = r.invariant;
  if (!out_path.empty()) emit(out_path, j.dump(2) + "\n", manifest_for("search-order", sub), out);
  out << (exhaustive ? "exhaustive" : "heuristic") << " search over " << r.evaluated
      << " orderings: max bond " << r.score.max_bond << (r.invariant ? " (invariant under all orderings)" : "")
      << "\n";
  if (out_path.empty()) out << j.dump(2) << "\n";
  return kExitOk;
}

int report_verify(const VerifyReport& report, const CLI::App* sub, const std::string& name,
                  const std::string& report_path, std::optional<std::uint64_t> seed,
                  std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
  }
  out << (report.passed() ? "PASS" : "FAIL") << " verify " << report.pipeline << " in "
      << fmt("%.2f", report.seconds) << " s\n";
  if (!report_path.empty()) {
    emit(report_path, report.to_json().dump(2) + "\n", manifest_for(name, sub, seed), out);
  }
  return report.passed() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"mpslab: MPS analysis of fermionic states", "mpslab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // gen
  std::string kind;
  std::optional<int> L, N;
  std::optional<std::uint64_t> seed;
  bool normalize = false;
  std::string out_path;
  auto* gen = app.add_subcommand("gen", "Generate a prime, Bell or random state");
  gen->add_option("--kind", kind, "State family")->required()->check(CLI::IsMember({"prime", "bell", "random"}));
  gen->add_option("--L", L, "Orbital count")->check(CLI::Range(1, kMaxOrbitals));
  gen->add_option("--N", N, "Electron count")->check(CLI::Range(1, kMaxOrbitals));
  gen->add_option("--seed", seed, "64-bit seed");
  gen->add_flag("--normalize", normalize, "Scale to unit norm");
  gen->add_option("--out", out_path, "Output state JSON (stdout if omitted)");

  // tt
  std::string state_path, report_path;
  double tol = kDefaultRankTol;
  auto* tt = app.add_subcommand("tt", "TT-SVD decomposition and bond dimensions");
  tt->add_option("--state", state_path, "State JSON")->required();
  tt->add_option("--tol", tol, "Relative singular value threshold")->check(CLI::NonNegativeNumber);
  tt->add_option("--report", report_path, "Report JSON");

  // reorder
  std::string perm_spec;
  auto* reorder = app.add_subcommand("reorder", "Apply an orbital permutation with fermionic signs");
  reorder->add_option("--state", state_path, "State JSON")->required();
  reorder->add_option("--perm", perm_spec,
                      "Permutation JSON file, or canonical|fiedler|pairing|best|random:<seed>")
      ->required();
  reorder->add_option("--out", out_path, "Output state JSON (stdout if omitted)");

  // spectrum
  int cut = 0;
  std::vector<std::string> orders;
  auto* spectrum = app.add_subcommand("spectrum", "Singular value spectra of an unfolding");
  spectrum->add_option("--state", state_path, "State JSON")->required();
  spectrum->add_option("--cut", cut, "Cut position k")->required();
  spectrum->add_option("--order", orders,
                       "canonical|fiedler|pairing|best|random:<seed>|perm:<file> (repeatable)")
      ->allow_extra_args(false);
  spectrum->add_option("--tol", tol, "Threshold used in the printed summary");
  spectrum->add_option("--out", out_path, "Output CSV (stdout if omitted)");

  // certify
  std::optional<int> certify_cut_k;
  bool all_cuts = false;
  std::size_t max_dim = kMaxExactDet;
  auto* certify = app.add_subcommand("certify", "Exact full-rank certificates for sector blocks");
  certify->add_option("--state", state_path, "State JSON")->required();
  certify->add_option("--cut", certify_cut_k, "Cut position k");
  certify->add_flag("--all-cuts", all_cuts, "Certify every cut");
  certify->add_option("--max-dim", max_dim, "Largest block square size to certify")
      ->check(CLI::Range(std::size_t{1}, kMaxExactDet));
  certify->add_option("--report", report_path, "Report JSON (stdout if omitted)");

  // search-order
  std::string objective = "maxrank", mode = "auto";
  auto* search = app.add_subcommand("search-order", "Search for the ordering with the smallest bond dimensions");
  search->add_option("--state", state_path, "State JSON")->required();
  search->add_option("--objective", objective, "Objective")->check(CLI::IsMember({"maxrank"}));
  search->add_option("--mode", mode, "Search mode")->check(CLI::IsMember({"auto", "exhaustive", "heuristic"}));
  search->add_option("--out", out_path, "Output permutation JSON");

  // verify
  auto* verify = app.add_subcommand("verify", "End-to-end verification pipelines");
  verify->require_subcommand(1);
  int bell_n = 0;
  auto* vbell = verify->add_subcommand("bell", "Bell-state bond dimension collapse");
  vbell->add_option("--N", bell_n, "Electron count")->required()->check(CLI::Range(1, kMaxVerifyBellN));
  vbell->add_option("--report", report_path, "Report JSON");

  int prime_l = 0, prime_n = 0;
  std::string prime_mode = "exhaustive";
  PrimeVerifyOptions prime_opts;
  std::optional<std::uint64_t> state_seed;
  auto* vprime = verify->add_subcommand("prime", "Ordering-invariant maximal rank of the prime state");
  vprime->add_option("--L", prime_l, "Orbital count")->required()->check(CLI::Range(2, kDenseCap));
  vprime->add_option("--N", prime_n, "Electron count")->required()->check(CLI::Range(1, kDenseCap));
  vprime->add_option("--mode", prime_mode, "Ordering enumeration")->check(CLI::IsMember({"exhaustive", "sampled"}));
  vprime->add_option("--samples", prime_opts.samples, "Sampled orderings (including canonical)");
  vprime->add_option("--seed", prime_opts.seed, "Seed for sampled orderings");
  vprime->add_option("--state-seed", state_seed, "Seed for the prime draw");
  vprime->add_option("--certify-max-dim", prime_opts.certify_max_dim,
                     "Largest block square size certified exactly (0 disables)")
      ->check(CLI::Range(std::size_t{0}, kMaxExactDet));
  vprime->add_option("--report", report_path, "Report JSON");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(gen, kind, L, N, seed, normalize, out_path, out);
    if (*tt) return cmd_tt(tt, state_path, tol, report_path, out);
    if (*reorder) return cmd_reorder(reorder, state_path, perm_spec, out_path, out);
    if (*spectrum) return cmd_spectrum(spectrum, state_path, cut, orders, out_path, tol, out);
    if (*certify) {
      return cmd_certify(certify, state_path, certify_cut_k, all_cuts, max_dim, report_path, out);
    }
    if (*search) return cmd_search(search, state_path, objective, mode, out_path, out);
    if (*vbell) return report_verify(verify_bell(bell_n), vbell, "verify bell", report_path, std::nullopt, out);
    if (*vprime) {
      prime_opts.mode = prime_mode == "sampled" ? OrderingMode::Sampled : OrderingMode::Exhaustive;
      prime_opts.state_seed = state_seed;
      const auto seed_for_manifest =
          prime_opts.mode == OrderingMode::Sampled ? std::optional(prime_opts.seed) : state_seed;
      return report_verify(verify_prime(prime_l, prime_n, prime_opts), vprime, "verify prime",
                           report_path, seed_for_manifest, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace mpslab::cli
