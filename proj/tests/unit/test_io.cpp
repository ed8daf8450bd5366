#include <cmath>
#include <filesystem>
#include <random>

#include <gtest/gtest.h>

#include "mpslab/error.hpp"
#include "mpslab/io.hpp"
#include "mpslab/states.hpp"
#include "support/oracles.hpp"

namespace mpslab {
namespace {

namespace fs = std::filesystem;

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("mpslab_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                       "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

TEST(StateJson, Format) {
  CIState s(4, 2);
  s.set(OrbitalTuple({1, 2}), 0.5);
  s.set(OrbitalTuple({2, 3}), -0.1);
  const std::string text = state_to_json(s);
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
  EXPECT_NE(text.find("{\"occ\": \"1100\", \"coeff\": 0.5}"), std::string::npos);
  EXPECT_NE(text.find("{\"occ\": \"0110\", \"coeff\": -0.10000000000000001}"), std::string::npos);
  EXPECT_EQ(state_from_json(text).state, s);
}

TEST(StateJson, RoundTripIsBitExact) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int L = 1 + static_cast<int>(gen() % 10);
    const int N = 1 + static_cast<int>(gen() % static_cast<unsigned>(L));
    const CIState s = oracle::random_sparse_state(L, N, gen);
    const StateFile back = state_from_json(state_to_json(s, {{"kind", "random"}}));
    EXPECT_EQ(back.state, s);
    EXPECT_EQ(back.meta["kind"], "random");
  }
  const CIState p = prime_state(12, 6, 3);
  EXPECT_EQ(state_from_json(state_to_json(p)).state, p);
}

TEST(StateJson, EmptyTerms) {
  const CIState empty(3, 1);
  EXPECT_EQ(state_from_json(state_to_json(empty)).state, empty);
  EXPECT_TRUE(state_from_json(R"({"L":3,"N":1,"terms":[]})").state.empty());
}

TEST(StateJson, AcceptsMinimalLayout) {
  const StateFile f = state_from_json(R"({"L":4,"N":2,"terms":[{"occ":"1100","coeff":0.5}]})");
  EXPECT_EQ(f.state.get(OrbitalTuple({1, 2})), 0.5);
}

TEST(StateJson, Rejections) {
  EXPECT_THROW(state_from_json("not json"), IoError);
  EXPECT_THROW(state_from_json("[1,2]"), IoError);
  EXPECT_THROW(state_from_json(R"({"N":1,"terms":[]})"), IoError);
  EXPECT_THROW(state_from_json(R"({"L":2,"N":1})"), IoError);
  EXPECT_THROW(state_from_json(R"({"schema_version":2,"L":2,"N":1,"terms":[]})"), IoError);
  EXPECT_THROW(state_from_json(R"({"L":3,"N":1,"terms":[{"occ":"10","coeff":1}]})"), IoError);
  EXPECT_THROW(state_from_json(R"({"L":3,"N":1,"terms":[{"occ":"110","coeff":1}]})"), IoError);
  EXPECT_THROW(state_from_json(R"({"L":3,"N":1,"terms":[{"occ":"100","coeff":1},{"occ":"100","coeff":2}]})"),
               IoError);
  EXPECT_THROW(state_from_json(R"({"L":3,"N":1,"terms":[{"occ":"100"}]})"), IoError);
  EXPECT_THROW(state_from_json(R"({"L":3,"N":1,"terms":[{"occ":"1x0","coeff":1}]})"), InvalidArgument);
  EXPECT_THROW(state_from_json(R"({"L":3,"N":4,"terms":[]})"), InvalidArgument);
}

TEST_F(IoTest, StateFiles) {
  const CIState s = bell_state(2);
  write_state(dir / "b.json", s, {{"kind", "bell"}});
  const StateFile f = read_state(dir / "b.json");
  EXPECT_EQ(f.state, s);
  EXPECT_EQ(f.meta["kind"], "bell");
  try {
    read_state(dir / "missing.json");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("missing.json"), std::string::npos);
  }
  EXPECT_THROW(write_state(dir / "nope" / "b.json", s), IoError);
}

TEST_F(IoTest, Permutations) {
  const OrbitalPermutation p({1, 3, 2, 4});
  EXPECT_EQ(permutation_to_json(p).dump(), R"({"perm":[1,3,2,4],"schema_version":1})");
  write_permutation(dir / "p.json", p);
  EXPECT_EQ(read_permutation(dir / "p.json"), p);
  EXPECT_EQ(permutation_from_json(nlohmann::json::parse(R"({"perm":[2,1]})")), OrbitalPermutation({2, 1}));
  EXPECT_THROW(permutation_from_json(nlohmann::json::parse(R"({"p":[2,1]})")), IoError);
  EXPECT_THROW(permutation_from_json(nlohmann::json::parse(R"({"perm":["a"]})")), IoError);
  EXPECT_THROW(permutation_from_json(nlohmann::json::parse(R"({"perm":[1,1]})")), InvalidArgument);
  write_text(dir / "bad.json", "{");
  EXPECT_THROW(read_permutation(dir / "bad.json"), IoError);
}

TEST_F(IoTest, Manifest) {
  ::setenv("SOURCE_DATE_EPOCH", "0", 1);
  EXPECT_EQ(current_timestamp(), "1970-01-01T00:00:00Z");
  ::unsetenv("SOURCE_DATE_EPOCH");

  RunManifest m;
  m.subcommand = "gen";
  m.flags = {{"kind", "prime"}};
  m.seed = 7;
  m.prng = "mt19937_64/rejection/box-muller/v1";
  m.timestamp = "1970-01-01T00:00:00Z";
  write_manifest(dir / "out.json", m);
  EXPECT_EQ(manifest_path(dir / "out.json"), dir / "out.json.manifest.json");
  const auto j = nlohmann::json::parse(read_text(dir / "out.json.manifest.json"));
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["tool_version"], kToolVersion);
  EXPECT_EQ(j["subcommand"], "gen");
  EXPECT_EQ(j["schema_version"], 1);

  RunManifest unseeded;
  EXPECT_TRUE(unseeded.to_json()["seed"].is_null());
  EXPECT_TRUE(unseeded.to_json()["prng"].is_null());
}

}  // namespace
}  // namespace mpslab
