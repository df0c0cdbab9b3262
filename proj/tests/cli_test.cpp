// Copyright 2026 The mrwb Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mrwb_cli.hpp"

namespace mrwb::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mrwb");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mrwb_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    std::ofstream(path("msg.txt")) << "attack at dawn";
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  const std::string seed_ = std::string(64, 'a');

 private:
  fs::path dir_;
};

TEST_F(CliFiles, SignOpenRoundTrip) {
  ASSERT_EQ(run_cli({"keygen", "--params", "desk", "--seed", seed_, "--pk", path("pk"), "--sk", path("sk")}).code, 0);
  ASSERT_EQ(run_cli({"sign", "--sk", path("sk"), "--msg", path("msg.txt"), "--seed", seed_, "--out", path("sig")}).code, 0);
  const Result ok = run_cli({"open", "--pk", path("pk"), "--msg", path("msg.txt"), "--sig", path("sig")});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "accept\n");

  std::ofstream(path("other.txt")) << "attack at dusk";
  const Result wrong = run_cli({"open", "--pk", path("pk"), "--msg", path("other.txt"), "--sig", path("sig")});
  EXPECT_EQ(wrong.code, 1);
  EXPECT_EQ(wrong.out.rfind("reject", 0), 0U);
}

TEST_F(CliFiles, DeterministicWithSeeds) {
  for (const char* name : {"a", "b"}) {
    run_cli({"keygen", "--seed", seed_, "--pk", path(std::string("pk") + name), "--sk", path(std::string("sk") + name)});
    run_cli({"sign", "--sk", path(std::string("sk") + name), "--msg", path("msg.txt"), "--seed", seed_, "--out",
             path(std::string("sig") + name)});
  }
  auto bytes = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_EQ(bytes(path("pka")), bytes(path("pkb")));
  EXPECT_EQ(bytes(path("siga")), bytes(path("sigb")));
}

TEST_F(CliFiles, TruncatedSignatureIsMalformedReject) {
  run_cli({"keygen", "--seed", seed_, "--pk", path("pk"), "--sk", path("sk")});
  run_cli({"sign", "--sk", path("sk"), "--msg", path("msg.txt"), "--out", path("sig")});
  fs::resize_file(path("sig"), fs::file_size(path("sig")) - 7);
  const Result r = run_cli({"open", "--pk", path("pk"), "--msg", path("msg.txt"), "--sig", path("sig")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.rfind("reject: malformed", 0), 0U) << r.out;
}

TEST_F(CliFiles, MalformedKeyIsUsageErrorNamingField) {
  std::ofstream(path("junk"), std::ios::binary) << "MRWB\x07";
  const Result r = run_cli({"sign", "--sk", path("junk"), "--msg", path("msg.txt"), "--out", path("sig")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("version"), std::string::npos) << r.err;
  const Result missing = run_cli({"open", "--pk", path("nope"), "--msg", path("msg.txt"), "--sig", path("sig")});
  EXPECT_EQ(missing.code, 2);
}

TEST_F(CliFiles, LibraryFileWithUnknownKey) {
  std::ofstream(path("lib.json")) << R"({"format": "mrwb-library/1", "name": "t", "entries": [
    {"name": "A", "t_keygen_ms": 1, "t_sign_ms": 2, "t_open_ms": 3, "kluts": 4, "kffs": 5, "brams": 6, "lut": 1}]})";
  const Result r = run_cli({"dse", "pr", "--lib", path("lib.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("entries[0].lut"), std::string::npos) << r.err;
}

TEST(Cli, DsePrGolden) {
  const Result r = run_cli({"dse", "pr", "--lib", "table3_zynq7000", "--sign-weight", "1", "--open-count", "1",
                            "--max-kluts", "23", "--max-kffs", "30", "--max-brams", "50"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("winner: Cut 3\nT_ms: 101.19\n", 0), 0U) << r.out;
}

TEST(Cli, DsePtAndInfeasible) {
  const Result pt = run_cli({"dse", "pt", "--tc", "110", "--objective", "kluts"});
  EXPECT_EQ(pt.code, 0);
  EXPECT_EQ(pt.out.rfind("winner: Cut 1+2\n", 0), 0U) << pt.out;
  const Result none = run_cli({"dse", "pt", "--tc", "1"});
  EXPECT_EQ(none.code, 1);
  EXPECT_NE(none.out.find("minimum achievable T_ms: 10.74"), std::string::npos) << none.out;
  const Result pr = run_cli({"dse", "pr", "--max-kluts", "1"});
  EXPECT_EQ(pr.code, 1);
  EXPECT_NE(pr.out.find("Cut 1: kluts exceeds bound by factor 3.8"), std::string::npos) << pr.out;
}

TEST(Cli, DseOutputIsByteDeterministic) {
  const std::vector<std::string> args = {"dse", "pareto", "--resource", "brams", "--csv", "--open-count", "2"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("name,t_ms,kluts,kffs,brams,feasible\n", 0), 0U);
  const Result csv = run_cli({"dse", "pr", "--csv"});
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 19);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"dse", "pr", "--sign-weight", "1.5"}).code, 2);
  EXPECT_EQ(run_cli({"dse", "pt", "--tc", "80", "--objective", "watts"}).code, 2);
  EXPECT_EQ(run_cli({"keygen", "--params", "huge", "--pk", "x", "--sk", "y"}).code, 2);
  EXPECT_EQ(run_cli({"keygen", "--seed", "zz", "--pk", "x", "--sk", "y"}).code, 2);
  EXPECT_EQ(run_cli({"predict", "--cut", "Cut 99"}).code, 2);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, PredictCut1) {
  const Result r = run_cli({"predict", "--cut", "Cut 1", "--params", "ia-like", "--profile", "table1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("sign_ms: 68.750"), std::string::npos) << r.out;
}

TEST(Cli, ShowLibRoundTrips) {
  const Result r = run_cli({"dse", "show-lib"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(parse_library(r.out), bundled_library());
}

}  // namespace
}  // namespace mrwb::cli
