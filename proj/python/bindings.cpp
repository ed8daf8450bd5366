#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpslab/mpslab.hpp"

namespace py = pybind11;
using namespace mpslab;

namespace {

OrbitalPermutation perm_or_identity(const CIState& s, const std::optional<std::vector<int>>& perm) {
  return perm ? OrbitalPermutation(*perm) : OrbitalPermutation::identity(s.L());
}

py::dict terms_dict(const CIState& s) {
  py::dict d;
  for (const auto& [t, c] : s.terms()) d[py::tuple(py::cast(t.indices()))] = c;
  return d;
}

CIState state_from_terms(int L, int N, const py::dict& terms) {
  CIState s(L, N);
  for (const auto& [key, value] : terms) {
    s.set(OrbitalTuple(key.cast<std::vector<int>>()), value.cast<double>());
  }
  return s;
}

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::dict certify_cut_dict(const CIState& s, int k, std::size_t max_dim) {
  const PrimePool pool = primes_below(prime_state_bound(s.L(), s.N()));
  const CutCertification cut = certify_cut(ci_to_occupation(s), k, pool, max_dim);
  py::list blocks;
  for (const auto& b : cut.blocks) {
    py::dict d;
    d["n"] = b.n;
    d["rows"] = b.rows;
    d["cols"] = b.cols;
    if (b.certificate) {
      d["status"] = b.certificate->status == CertStatus::Pass ? "PASS" : "FAIL";
      d["certified_rank"] = b.certificate->certified_rank;
      d["determinant"] = b.certificate->determinant.to_string();
    } else {
      d["status"] = "SKIPPED";
    }
    blocks.append(d);
  }
  py::dict out;
  out["k"] = cut.k;
  out["blocks"] = blocks;
  out["certified_total"] = cut.certified_total;
  out["skipped"] = cut.skipped;
  out["all_passed"] = cut.all_passed;
  return out;
}

}  // namespace

PYBIND11_MODULE(_mpslab, m) {
  m.doc() = "MPS analysis of fermionic states: construction, TT-SVD, reordering, exact rank certificates";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
  py::register_exception<MalformedTensor>(m, "MalformedTensor", PyExc_ValueError);
  py::register_exception<InsufficientPrimes>(m, "InsufficientPrimes", PyExc_ValueError);
  py::register_exception<UnsupportedEntry>(m, "UnsupportedEntry", PyExc_ValueError);
  py::register_exception<ZeroState>(m, "ZeroState", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<CIState>(m, "CIState")
      .def(py::init(&state_from_terms), py::arg("L"), py::arg("N"), py::arg("terms") = py::dict())
      .def_property_readonly("L", &CIState::L)
      .def_property_readonly("N", &CIState::N)
      .def("terms", &terms_dict, "Mapping from 1-based orbital tuples to coefficients")
      .def("norm", &CIState::norm)
      .def("__len__", &CIState::size)
      .def("__eq__", [](const CIState& a, const CIState& b) { return a == b; })
      .def("dense", [](const CIState& s) {
        const OccupationTensor t = ci_to_occupation(s);
        return py::array_t<double>(static_cast<py::ssize_t>(t.dim()), t.values().data());
      }, "Coefficients over all 2^L bitstrings (orbital 1 is the most significant bit)")
      .def("to_json", [](const CIState& s) { return state_to_json(s); })
      .def_static("from_json", [](const std::string& text) { return state_from_json(text).state; })
      .def("__repr__", [](const CIState& s) {
        return "<CIState L=" + std::to_string(s.L()) + " N=" + std::to_string(s.N()) + " terms=" +
               std::to_string(s.size()) + ">";
      });

  m.def("prime_state", &prime_state, py::arg("L"), py::arg("N"), py::arg("seed") = py::none(),
        py::arg("normalize") = false);
  m.def("bell_state", &bell_state, py::arg("N"));
  m.def("random_state", &random_state, py::arg("L"), py::arg("N"), py::arg("seed"));
  m.def("slater_expand", &slater_expand, py::arg("orbitals"));
  m.def("primes_below", [](std::uint64_t bound) { return primes_below(bound).primes; }, py::arg("bound"));
  m.def("max_sector_rank", &max_sector_rank, py::arg("L"), py::arg("N"), py::arg("k"));

  m.def("unfold", [](const CIState& s, int k) { return unfold(ci_to_occupation(s), k).matrix; },
        py::arg("state"), py::arg("k"));
  m.def("bond_dims", [](const CIState& s, double tol) { return tt_svd(ci_to_occupation(s), tol).bond_dims(); },
        py::arg("state"), py::arg("rel_tol") = kDefaultRankTol);
  m.def("tt_reconstruction_error", [](const CIState& s, double tol) {
    const OccupationTensor t = ci_to_occupation(s);
    const OccupationTensor back = reconstruct(tt_svd(t, tol), s.N());
    double diff = 0.0;
    for (Bits b = 0; b < t.dim(); ++b) diff += (back[b] - t[b]) * (back[b] - t[b]);
    return std::sqrt(diff) / t.norm();
  }, py::arg("state"), py::arg("rel_tol") = 1e-14);
  m.def("bell_mps_dense", [](int N) {
    const OccupationTensor t = reconstruct(bell_mps_explicit(N), N);
    return py::array_t<double>(static_cast<py::ssize_t>(t.dim()), t.values().data());
  }, py::arg("N"));

  m.def("apply_permutation", [](const CIState& s, const std::vector<int>& perm) {
    return apply_permutation(s, OrbitalPermutation(perm));
  }, py::arg("state"), py::arg("perm"));
  m.def("pairing_permutation", [](int N) { return pairing_permutation(N).values(); }, py::arg("N"));
  m.def("mutual_information", [](const CIState& s) { return mutual_information_matrix(s).values; },
        py::arg("state"));
  m.def("fiedler_order", [](const CIState& s) { return fiedler_order(mutual_information_matrix(s)).values(); },
        py::arg("state"));
  m.def("best_order", [](const CIState& s, bool exhaustive) {
    const OrderSearchResult r = exhaustive ? exhaustive_best_order(s) : heuristic_best_order(s);
    py::dict d;
    d["perm"] = r.best.values();
    d["bond_dims"] = r.score.bond_dims;
    d["max_bond"] = r.score.max_bond;
    d["invariant"] = r.invariant;
    d["evaluated"] = r.evaluated;
    return d;
  }, py::arg("state"), py::arg("exhaustive") = true);

  m.def("singular_spectrum", [](const CIState& s, int k, std::optional<std::vector<int>> perm) {
    const SpectrumRecord rec = singular_spectrum(s, perm_or_identity(s, perm), k);
    return py::array_t<double>(static_cast<py::ssize_t>(rec.sigmas.size()), rec.sigmas.data());
  }, py::arg("state"), py::arg("k"), py::arg("perm") = py::none());
  m.def("export_csv", [](const std::vector<std::tuple<std::string, int, std::vector<double>>>& rows,
                         const std::string& path) {
    std::vector<SpectrumRecord> records;
    for (const auto& [label, k, sigmas] : rows) records.push_back({label, k, sigmas, 0.0});
    export_csv(records, path);
  }, py::arg("records"), py::arg("path"), "records: iterable of (label, cut, sigmas)");

  m.def("certify_cut", &certify_cut_dict, py::arg("state"), py::arg("k"), py::arg("max_dim") = kMaxExactDet);

  m.def("verify_bell", [](int N) { return json_to_py(verify_bell(N).to_json()); }, py::arg("N"));
  m.def("verify_prime", [](int L, int N, const std::string& mode, std::size_t samples, std::uint64_t seed) {
    PrimeVerifyOptions opts;
    opts.mode = mode == "sampled" ? OrderingMode::Sampled : OrderingMode::Exhaustive;
    opts.samples = samples;
    opts.seed = seed;
    py::gil_scoped_release release;
    const VerifyReport report = verify_prime(L, N, opts);
    py::gil_scoped_acquire acquire;
    return json_to_py(report.to_json());
  }, py::arg("L"), py::arg("N"), py::arg("mode") = "exhaustive", py::arg("samples") = 50, py::arg("seed") = 0);
}
