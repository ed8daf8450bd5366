#include "mpslab/spectra.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "mpslab/error.hpp"
#include "mpslab/svd.hpp"

namespace mpslab {

SpectrumRecord singular_spectrum(const CIState& state, const OrbitalPermutation& sigma, int k,
                                 std::string label) {
  if (state.empty()) throw ZeroState("singular spectrum of the zero state");
  if (label.find_first_of(",\n\r") != std::string::npos) {
    throw InvalidArgument("ordering label must not contain commas or newlines");
  }
  const OccupationTensor t = ci_to_occupation(apply_permutation(state, sigma));
  const Eigen::VectorXd s = sector_singular_values(t, k);
  return SpectrumRecord{std::move(label), k, std::vector<double>(s.data(), s.data() + s.size()),
                        state.norm()};
}

int numerical_rank(const SpectrumRecord& rec, double rel_tol) {
  return count_above(Eigen::Map<const Eigen::VectorXd>(rec.sigmas.data(),
                                                       static_cast<Eigen::Index>(rec.sigmas.size())),
                     rel_tol);
}

double entanglement_entropy(const SpectrumRecord& rec) {
  return entropy_bits(Eigen::Map<const Eigen::VectorXd>(
      rec.sigmas.data(), static_cast<Eigen::Index>(rec.sigmas.size())));
}

void write_csv(std::ostream& out, const std::vector<SpectrumRecord>& records) {
  out << kSpectrumCsvHeader << '\n';
  char buf[64];
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < rec.sigmas.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.16e", rec.sigmas[i]);
      out << rec.ordering_label << ',' << rec.k << ',' << (i + 1) << ',' << buf << '\n';
    }
  }
}

void export_csv(const std::vector<SpectrumRecord>& records, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
  write_csv(out, records);
  out.flush();
  if (!out) throw IoError("write to " + path.string() + " failed");
}

std::vector<SpectrumRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSpectrumCsvHeader) {
    throw IoError("spectrum CSV must start with '" + std::string(kSpectrumCsvHeader) + "'");
  }
  std::vector<SpectrumRecord> records;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string label, cut, index, sigma;
    if (!std::getline(ss, label, ',') || !std::getline(ss, cut, ',') ||
        !std::getline(ss, index, ',') || !std::getline(ss, sigma)) {
      throw IoError("line " + std::to_string(lineno) + ": expected 4 fields");
    }
    char* end = nullptr;
    const double value = std::strtod(sigma.c_str(), &end);
    if (end == sigma.c_str() || *end != '\0') {
      throw IoError("line " + std::to_string(lineno) + ": bad sigma '" + sigma + "'");
    }
    int k = 0;
    std::size_t idx = 0;
    try {
      k = std::stoi(cut);
      idx = std::stoul(index);
    } catch (const std::exception&) {
      throw IoError("line " + std::to_string(lineno) + ": bad cut or index");
    }
    if (records.empty() || records.back().ordering_label != label || records.back().k != k ||
        idx == 1) {
      records.push_back(SpectrumRecord{label, k, {}, 0.0});
    }
    if (idx != records.back().sigmas.size() + 1) {
      throw IoError("line " + std::to_string(lineno) + ": index " + std::to_string(idx) +
                    " out of sequence");
    }
    records.back().sigmas.push_back(value);
  }
  return records;
}

std::vector<SpectrumRecord> import_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  return read_csv(in);
}

}  // namespace mpslab
