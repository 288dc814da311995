// Copyright 2026 The medforest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("medforest_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) {
    const std::string cmd = std::string(MEDFOREST_CLI_PATH) + " " + args + " > " +
                            (dir_ / "stdout").string() + " 2> " + (dir_ / "stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, AppendixMedianOracle) {
  ASSERT_EQ(run("gen --kind appendix --ell 10 --out " + path("a.json")), 0);
  ASSERT_EQ(run("oracle --instance " + path("a.json") + " --objective median"), 0);
  EXPECT_NE(read("stdout").find("\"opt_value\": 11000.0"), std::string::npos) << read("stdout");
}

TEST_F(CliTest, GapDemoPasses) {
  EXPECT_EQ(run("gap-demo --k 4 --w 100 --M 1e6 --t 3"), 0);
  EXPECT_NE(read("stdout").find("\"ratio\": 100.0"), std::string::npos);
}

TEST_F(CliTest, GapDemoFailsWhenSwapsReachOptimum) {
  EXPECT_EQ(run("gap-demo --k 3 --w 100 --M 1e6 --t 3"), 4);
}

TEST_F(CliTest, SolveThenVerify) {
  ASSERT_EQ(run("gen --kind random --n 11 --k 3 --seed 4 --out " + path("r.json")), 0);
  for (const char* mode : {"locvrp", "bicriteria", "kmf", "kmedian", "ktree"}) {
    ASSERT_EQ(run("solve --instance " + path("r.json") + " --mode " + mode + " --restarts 2 --out " +
                  path("res.json")),
              0)
        << mode << read("stderr");
    EXPECT_EQ(run("verify --instance " + path("r.json") + " --result " + path("res.json")), 0)
        << mode << read("stderr");
  }
}

TEST_F(CliTest, VerifyRejectsTamperedResult) {
  ASSERT_EQ(run("gen --kind random --n 9 --k 2 --seed 1 --out " + path("r.json")), 0);
  ASSERT_EQ(run("solve --instance " + path("r.json") + " --out " + path("res.json")), 0);
  std::string text = read("res.json");
  const auto pos = text.find("\"total_cost\": ");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 14, "1");
  std::ofstream(path("bad.json")) << text;
  EXPECT_EQ(run("verify --instance " + path("r.json") + " --result " + path("bad.json")), 4);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run("solve"), 1);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("solve --instance " + path("missing.json")), 2);
  std::ofstream(path("junk.json")) << "{ nope";
  EXPECT_EQ(run("solve --instance " + path("junk.json")), 2);
  ASSERT_EQ(run("gen --kind random --n 40 --k 12 --out " + path("big.json")), 0);
  EXPECT_EQ(run("oracle --instance " + path("big.json")), 3);
}

TEST_F(CliTest, RejectsInvalidInstance) {
  ASSERT_EQ(run("gen --kind random --n 6 --k 2 --capacity 0.5 --out " + path("r.json")), 0);
  EXPECT_EQ(run("solve --instance " + path("r.json")), 2);
  EXPECT_EQ(run("validate --instance " + path("r.json")), 4);
}

TEST_F(CliTest, ImportTsplib) {
  std::ofstream(path("t.vrp")) << "NAME : t-k2\nDIMENSION : 4\nCAPACITY : 5\n"
                                  "EDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n"
                                  "1 0 0\n2 0 3\n3 4 0\n4 4 3\nDEMAND_SECTION\n"
                                  "1 0\n2 2\n3 2\n4 3\nDEPOT_SECTION\n1\n-1\nEOF\n";
  ASSERT_EQ(run("import-tsplib --in " + path("t.vrp") + " --out " + path("t.json")), 0);
  ASSERT_EQ(run("solve --instance " + path("t.json") + " --out " + path("res.json")), 0);
  EXPECT_EQ(run("verify --instance " + path("t.json") + " --result " + path("res.json")), 0);
}

TEST_F(CliTest, ThreadsEnvironmentDoesNotChangeOutput) {
  ASSERT_EQ(run("gen --kind random --n 12 --k 3 --seed 8 --out " + path("r.json")), 0);
  ASSERT_EQ(run("--threads 1 solve --instance " + path("r.json") + " --out " + path("a.json")), 0);
  ASSERT_EQ(run("--threads 3 solve --instance " + path("r.json") + " --out " + path("b.json")), 0);
  auto strip = [](std::string s) {
    const auto pos = s.find("\"threads\"");
    return pos == std::string::npos ? s : s.erase(pos, s.find('\n', pos) - pos);
  };
  EXPECT_EQ(strip(read("a.json")), strip(read("b.json")));
}

}  // namespace
