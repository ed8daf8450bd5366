#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "mpslab/io.hpp"
#include "mpslab/spectra.hpp"
#include "mpslab/states.hpp"

namespace mpslab {
namespace {

namespace fs = std::filesystem;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          (std::string("mpslab_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
    ::setenv("SOURCE_DATE_EPOCH", "1700000000", 1);
  }
  void TearDown() override {
    ::unsetenv("SOURCE_DATE_EPOCH");
    fs::remove_all(dir);
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  fs::path dir;
};

TEST_F(CliTest, GenBellThenTT) {
  ASSERT_EQ(run({"gen", "--kind", "bell", "--N", "3", "--out", path("b.json")}).code, cli::kExitOk);
  EXPECT_TRUE(fs::exists(path("b.json.manifest.json")));
  const Invocation tt = run({"tt", "--state", path("b.json"), "--report", path("tt.json")});
  ASSERT_EQ(tt.code, cli::kExitOk) << tt.err;
  EXPECT_NE(tt.out.find("bond_dims [2,4,8,4,2]"), std::string::npos) << tt.out;
  const auto report = nlohmann::json::parse(read_text(path("tt.json")));
  EXPECT_EQ(report["bond_dims"], (std::vector<int>{2, 4, 8, 4, 2}));
  EXPECT_LT(report["reconstruction_error"].get<double>(), 1e-12);
  EXPECT_TRUE(fs::exists(path("tt.json.manifest.json")));
}

TEST_F(CliTest, GenPrimeMatchesLibrary) {
  ASSERT_EQ(run({"gen", "--kind", "prime", "--L", "6", "--N", "3", "--seed", "4", "--out", path("p.json")}).code, 0);
  EXPECT_EQ(read_state(path("p.json")).state, prime_state(6, 3, 4));
  const auto manifest = nlohmann::json::parse(read_text(path("p.json.manifest.json")));
  EXPECT_EQ(manifest["seed"], 4);
  EXPECT_EQ(manifest["prng"], "mt19937_64/rejection/box-muller/v1");
  EXPECT_EQ(manifest["subcommand"], "gen");
}

TEST_F(CliTest, OutputsAreByteReproducible) {
  const std::vector<std::string> files = {"s.json", "s.json.manifest.json", "s.csv", "s.csv.manifest.json",
                                          "v.json", "v.json.manifest.json"};
  std::vector<std::string> first;
  for (int pass = 0; pass < 2; ++pass) {
    ASSERT_EQ(run({"gen", "--kind", "random", "--L", "8", "--N", "4", "--seed", "17", "--out", path("s.json")}).code, 0);
    ASSERT_EQ(run({"spectrum", "--state", path("s.json"), "--cut", "4", "--order", "canonical", "--order",
                   "random:3", "--out", path("s.csv")})
                  .code,
              0);
    ASSERT_EQ(run({"verify", "prime", "--L", "5", "--N", "2", "--mode", "sampled", "--samples", "8", "--seed", "2",
                   "--report", path("v.json")})
                  .code,
              0);
    for (std::size_t i = 0; i < files.size(); ++i) {
      const std::string text = read_text(path(files[i]));
      if (pass == 0) {
        first.push_back(text);
      } else {
        EXPECT_EQ(text, first[i]) << files[i];
      }
    }
    for (const auto& f : files) fs::remove(path(f));
  }
}

TEST_F(CliTest, SpectrumWithTwoOrders) {
  ASSERT_EQ(run({"gen", "--kind", "prime", "--L", "8", "--N", "4", "--out", path("p.json")}).code, 0);
  const Invocation r = run({"spectrum", "--state", path("p.json"), "--cut", "4", "--order", "canonical", "--order",
                     "fiedler", "--out", path("s.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto records = import_csv(path("s.csv"));
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].ordering_label, "canonical");
  EXPECT_EQ(records[1].ordering_label, "fiedler");
  for (const auto& rec : records) EXPECT_EQ(rec.sigmas.size(), 16u);
}

TEST_F(CliTest, ReorderAndSearch) {
  ASSERT_EQ(run({"gen", "--kind", "bell", "--N", "2", "--out", path("b.json")}).code, 0);
  ASSERT_EQ(run({"reorder", "--state", path("b.json"), "--perm", "pairing", "--out", path("r.json")}).code, 0);
  const CIState paired = read_state(path("r.json")).state;
  for (const auto& [t, c] : paired.terms()) EXPECT_NEAR(c, 0.5, 1e-15);

  write_permutation(path("p.json"), OrbitalPermutation({2, 1, 3, 4}));
  ASSERT_EQ(run({"reorder", "--state", path("b.json"), "--perm", path("p.json"), "--out", path("q.json")}).code, 0);
  EXPECT_NEAR(read_state(path("q.json")).state.get(OrbitalTuple({1, 2})), -0.5, 1e-15);

  const Invocation s = run({"search-order", "--state", path("b.json"), "--objective", "maxrank", "--out", path("best.json")});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(read_permutation(path("best.json")).values(), (std::vector<int>{1, 3, 2, 4}));
}

TEST_F(CliTest, Certify) {
  ASSERT_EQ(run({"gen", "--kind", "prime", "--L", "6", "--N", "3", "--out", path("p.json")}).code, 0);
  const Invocation r = run({"certify", "--state", path("p.json"), "--cut", "3", "--report", path("c.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto report = nlohmann::json::parse(read_text(path("c.json")));
  EXPECT_NE(report.dump().find("\"certified_total\":8"), std::string::npos) << report.dump();
  EXPECT_EQ(run({"certify", "--state", path("p.json"), "--all-cuts"}).code, 0);

  ASSERT_EQ(run({"gen", "--kind", "random", "--L", "4", "--N", "2", "--seed", "1", "--out", path("r.json")}).code, 0);
  EXPECT_EQ(run({"certify", "--state", path("r.json"), "--cut", "2"}).code, cli::kExitUsage);
}

TEST_F(CliTest, Verify) {
  const Invocation bell = run({"verify", "bell", "--N", "2"});
  EXPECT_EQ(bell.code, 0);
  EXPECT_EQ(std::count(bell.out.begin(), bell.out.end(), '\n'), 4) << bell.out;
  EXPECT_EQ(run({"verify", "bell", "--N", "1"}).code, 0);
  EXPECT_EQ(run({"verify", "bell", "--N", "6"}).code, cli::kExitUsage);
  const Invocation prime = run({"verify", "prime", "--L", "4", "--N", "2", "--mode", "exhaustive"});
  EXPECT_EQ(prime.code, 0);
  EXPECT_NE(prime.out.find("24/24"), std::string::npos) << prime.out;
  EXPECT_EQ(run({"verify", "prime", "--L", "7", "--N", "3", "--mode", "exhaustive"}).code, cli::kExitUsage);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"tt"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"gen", "--kind", "prime", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"gen", "--kind", "unknown"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"tt", "--state", path("missing.json")}).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
  EXPECT_EQ(run({"spectrum", "--help"}).code, cli::kExitOk);
}

}  // namespace
}  // namespace mpslab
