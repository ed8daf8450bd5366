#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mpslab/fock.hpp"
#include "mpslab/mps.hpp"
#include "mpslab/ordering.hpp"

namespace mpslab {

/// One curve of a singular-value plot.
struct SpectrumRecord {
  std::string ordering_label;
  int k = 0;
  /// Descending, length min(2^k, 2^(L-k)); sector-forbidden values are exact zeros.
  std::vector<double> sigmas;
  double state_norm = 0.0;
};

/// Reorders the state, unfolds at cut k and returns the full singular spectrum.
SpectrumRecord singular_spectrum(const CIState& state, const OrbitalPermutation& sigma, int k,
                                 std::string label = "canonical");

int numerical_rank(const SpectrumRecord& rec, double rel_tol = kDefaultRankTol);

/// Entropy in bits of the normalized Schmidt weights.
double entanglement_entropy(const SpectrumRecord& rec);

inline constexpr const char* kSpectrumCsvHeader = "ordering,cut,index,sigma";

/// One row per singular value; sigma as %.16e.
void write_csv(std::ostream& out, const std::vector<SpectrumRecord>& records);
void export_csv(const std::vector<SpectrumRecord>& records, const std::filesystem::path& path);

/// Inverse of write_csv (state_norm is not stored and is left at 0).
std::vector<SpectrumRecord> read_csv(std::istream& in);
std::vector<SpectrumRecord> import_csv(const std::filesystem::path& path);

}  // namespace mpslab
