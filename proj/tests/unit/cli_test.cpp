#include "fpsir/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

namespace fpsir::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fpsir_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliRun, WritesArtifactsDeterministically) {
  const auto a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(run({"run", "scenario1", "--out", a.string(), "--snapshots", "0,5"}).code, 0);
  ASSERT_EQ(run({"run", "scenario1", "--out", b.string(), "--snapshots", "0,5"}).code, 0);
  for (const char* name : {"controls.csv", "trace.csv", "dynamics.csv", "summary.txt",
                           "density_t0.0000.csv", "density_t5.0000.csv"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  const auto summary = slurp(a / "summary.txt");
  EXPECT_NE(summary.find("status=converged_tau"), std::string::npos) << summary;
  EXPECT_EQ(slurp(a / "controls.csv").find('\r'), std::string::npos);
}

TEST_F(CliRun, BaselineSkipsOptimisation) {
  ASSERT_EQ(run({"baseline", "scenario1", "--out", dir_.string(), "--snapshots", "10"}).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "density_t10.0000.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "trace.csv"));
}

TEST(Cli, UnknownPreset) {
  const auto r = run({"run", "nosuchpreset", "--out", "/tmp/fpsir_unused"});
  EXPECT_EQ(r.code, kConfig);
  EXPECT_NE(r.err.find("error: unknown preset: nosuchpreset"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({"run", "scenario1", "--bogus"}).code, kUsage);
  EXPECT_EQ(run({"run", "scenario1", "--out", "/tmp/fpsir_unused", "--snapshots", "0.3"}).code,
            kUsage);
}

TEST(Cli, UnwritableOutput) {
  EXPECT_EQ(run({"baseline", "uncontrolled", "--out", "/proc/fpsir_forbidden"}).code,
            kIo);
}

TEST(Cli, SelfCheckPasses) {
  const auto r = run({"check"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
}

}  // namespace
}  // namespace fpsir::cli
