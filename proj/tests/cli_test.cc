// Copyright 2026 The Blotto Solver Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "blotto/strategy_io.h"
#include "cli.h"

namespace blotto {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "blotto");
  std::ostringstream out, err;
  CliRun r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("blotto_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, GenIsDeterministic) {
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(run({"gen", "--kind", "affine", "--seed", "7", "--out", path(name)}).code, 0);
  }
  EXPECT_EQ(read_text_file(path("a.json")), read_text_file(path("b.json")));
  const CliRun other = run({"gen", "--kind", "affine", "--seed", "8"});
  EXPECT_NE(other.out, read_text_file(path("a.json")));
}

TEST_F(CliTest, SolveThenGap) {
  ASSERT_EQ(run({"gen", "--kind", "doubling", "--n", "3", "--m1", "2", "--m2", "3", "--out",
                 path("inst.json")}).code, 0);
  const CliRun solve = run({"solve-lp", "--instance", path("inst.json"), "--out", path("eq.json"),
                         "--strategy1", path("s1.csv"), "--strategy2", path("s2.csv")});
  ASSERT_EQ(solve.code, 0) << solve.err;
  const auto eq = nlohmann::json::parse(read_text_file(path("eq.json")));
  const CliRun gap = run({"gap", "--instance", path("inst.json"), "--strategy1", path("s1.csv"),
                       "--strategy2", path("s2.csv")});
  ASSERT_EQ(gap.code, 0) << gap.err;
  const auto g = nlohmann::json::parse(gap.out);
  EXPECT_LE(g.at("gap").get<double>(), 1e-5);
  EXPECT_NEAR(g.at("value").get<double>(), eq.at("value").get<double>(), 1e-6);
}

TEST_F(CliTest, SolveLinearMinBothSides) {
  ASSERT_EQ(run({"gen", "--kind", "affine", "--n", "3", "--m2", "2", "--out", path("inst.json")}).code, 0);
  // Random affine instances have d != 0, which the LP cannot handle.
  const CliRun bad = run({"solve-lp", "--instance", path("inst.json")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("subgradient ascent"), std::string::npos) << bad.err;
}

TEST_F(CliTest, ExportLp) {
  ASSERT_EQ(run({"gen", "--kind", "doubling", "--n", "2", "--m1", "1", "--m2", "1", "--out",
                 path("inst.json")}).code, 0);
  const CliRun r = run({"export-lp", "--instance", path("inst.json"), "--side", "minmax"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Minimize"), std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.size() - 4), "End\n");
}

TEST_F(CliTest, LearnWritesTraceAndProfiles) {
  ASSERT_EQ(run({"gen", "--kind", "doubling", "--n", "2", "--m1", "1", "--m2", "2", "--out",
                 path("inst.json")}).code, 0);
  const CliRun r = run({"learn", "--instance", path("inst.json"), "--algorithm", "prm+",
                     "--averaging", "quadratic", "--max-iters", "500", "--gap-check-every", "100",
                     "--profiles", path("p.json"), "--strategy1", path("s1.csv"), "--strategy2",
                     path("s2.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("iteration,time_s,gap,value\n", 0), 0u);
  EXPECT_TRUE(fs::exists(path("p.json")));
  EXPECT_EQ(run({"gap", "--instance", path("inst.json"), "--strategy1", path("s1.csv"),
                 "--strategy2", path("s2.csv")}).code, 0);
}

TEST_F(CliTest, AscendWritesTrace) {
  ASSERT_EQ(run({"gen", "--kind", "quadratic", "--n", "3", "--m2", "5", "--seed", "3", "--out",
                 path("inst.json")}).code, 0);
  const CliRun r = run({"ascend", "--instance", path("inst.json"), "--max-iters", "20",
                     "--out", path("best.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("t,V,i_star,eta,sigma_0,sigma_1,sigma_2\n", 0), 0u);
  EXPECT_TRUE(fs::exists(path("best.json")));
}

TEST_F(CliTest, VerifyPasses) {
  const CliRun r = run({"verify"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST_F(CliTest, BenchWritesCsv) {
  const CliRun r = run({"bench", "--n", "2", "--m1", "1", "--m2", "1", "--max-iters", "200",
                     "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("n,m1,m2,seed,dim1,dim2,lp_value,lp_time_s,rm_value,rm_gap,rm_iters,rm_time_s\n", 0),
            0u);
}

TEST_F(CliTest, UsageErrorsExit64) {
  EXPECT_EQ(run({"gen", "--bogus"}).code, 64);
  EXPECT_EQ(run({}).code, 64);
  EXPECT_EQ(run({"frobnicate"}).code, 64);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ValidationErrorsExit1) {
  std::ofstream(path("bad.json")) << "{\"n\": 1}";
  const CliRun r = run({"solve-lp", "--instance", path("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("missing key"), std::string::npos) << r.err;
  EXPECT_EQ(run({"solve-lp", "--instance", path("absent.json")}).code, 1);
}

TEST_F(CliTest, ConfigFileSuppliesDefaults) {
  std::ofstream(path("cfg.json")) << R"({"kind": "doubling", "n": 2, "m1": 1, "m2": 2})";
  const CliRun a = run({"gen", "--config", path("cfg.json")});
  ASSERT_EQ(a.code, 0) << a.err;
  const CliRun b = run({"gen", "--kind", "doubling", "--n", "2", "--m1", "1", "--m2", "2"});
  EXPECT_EQ(a.out, b.out);
  // Command-line flags win over the file.
  const CliRun c = run({"gen", "--config", path("cfg.json"), "--n", "3"});
  EXPECT_NE(c.out.find("\"n\": 3"), std::string::npos);
  std::ofstream(path("bad_cfg.json")) << "[1, 2]";
  EXPECT_EQ(run({"gen", "--config", path("bad_cfg.json")}).code, 1);
}

TEST(ExpandConfig, ArraysAndBooleans) {
  const auto p = fs::temp_directory_path() / "blotto_expand_config.json";
  std::ofstream(p) << R"({"n": [2, 3], "verbose": true, "quiet": false, "out": "x.csv"})";
  const auto args = cli::expand_config({"blotto", "bench", "--config", p.string(), "--seeds", "2"});
  const std::vector<std::string> want{"blotto", "bench", "--n", "2", "3", "--out=x.csv",
                                      "--verbose", "--seeds", "2"};
  EXPECT_EQ(args, want);
  fs::remove(p);
}

}  // namespace
}  // namespace blotto
