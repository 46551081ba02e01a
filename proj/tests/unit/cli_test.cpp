#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"

namespace household::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "household");
  std::vector<const char *> argv;
  for (const auto &a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("household_cli_" + std::string(::testing::UnitTest::GetInstance()
                                                ->current_test_info()
                                                ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string config(const std::string &name, double g2, double g3, double g5,
                     const std::string &extra = "", bool with_tau = true) {
    const fs::path p = dir_ / name;
    std::ofstream f(p);
    f << "gamma1 = 1\ngamma2 = " << g2 << "\ngamma3 = " << g3 << "\ngamma4 = 1\ngamma5 = " << g5
      << "\ngamma6 = 1\ngamma7 = 1\nw = 1\n"
      << (with_tau ? "tau = 0.1\n" : "") << "w_next = 1\nR_next = 1\nRp_next = 1\n"
      << extra;
    return p.string();
  }

  std::string ones() { return config("ones.cfg", 1, 1, 1); }
  std::string path(const std::string &name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(CliTest, SolveAllOnes) {
  const Outcome r = invoke({"solve", ones()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("regime: Interior"), std::string::npos);
  EXPECT_NE(r.out.find("n                1.66667"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("e                    0.1"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("utility: -8.44797"), std::string::npos);
}

TEST_F(CliTest, SolveCornerExitsTwo) {
  const Outcome r = invoke({"solve", config("corner.cfg", 0.5, 2, 0.5)});
  EXPECT_EQ(r.code, kExitNotInterior);
  EXPECT_NE(r.err.find("Corner"), std::string::npos);
}

TEST_F(CliTest, SolveMissingKeyExitsOne) {
  const Outcome r = invoke({"solve", config("notau.cfg", 1, 1, 1, "", false)});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("'tau'"), std::string::npos);
}

TEST_F(CliTest, SolveInvalidParameterExitsOne) {
  const Outcome r = invoke({"solve", config("bad.cfg", 1, 1, 1.5)});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("gamma5"), std::string::npos);
}

TEST_F(CliTest, StaticsSignsAllPass) {
  const Outcome r = invoke({"statics", ones(), "--signs"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  std::size_t passes = 0;
  for (auto pos = r.out.find("PASS"); pos != std::string::npos; pos = r.out.find("PASS", pos + 1)) {
    ++passes;
  }
  EXPECT_EQ(passes, 9u);
}

TEST_F(CliTest, StaticsTableReportsSevenDiscrepancies) {
  const Outcome r = invoke({"statics", config("half.cfg", 1, 0.5, 1), "--table1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("discrepancies: 7 of 42 cells"), std::string::npos) << r.out;
  for (const char *cell : {"(c,gamma1)", "(p,gamma4)", "(s,gamma6)", "(q,gamma7)", "(n,gamma2)",
                           "(n,gamma5)", "(e,gamma3)"}) {
    EXPECT_NE(r.out.find(cell), std::string::npos) << cell;
  }
}

TEST_F(CliTest, StaticsNonInteriorExitsTwo) {
  EXPECT_EQ(invoke({"statics", config("sing.cfg", 0.5, 1, 0.5)}).code, kExitNotInterior);
}

TEST_F(CliTest, VerifyWithSeeds) {
  const Outcome r = invoke({"verify", ones(), "--seeds", "100"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("101 of 101 instances PASS"), std::string::npos);
}

TEST_F(CliTest, VerifyZeroSeedsChecksConfigOnly) {
  const Outcome r = invoke({"verify", ones(), "--seeds", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("1 of 1 instances PASS"), std::string::npos);
}

TEST_F(CliTest, VerifyCatchesCorruptedClosedForm) {
  const Outcome r = invoke({"verify", ones(), "--seeds", "2", "--inject-fault"});
  EXPECT_EQ(r.code, kExitVerifyFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST_F(CliTest, SweepCrowdOutIsDeterministic) {
  const std::string cfg = ones();
  const Outcome a = invoke({"sweep", cfg, "--scenario", "crowd_out", "--out", path("a.csv")});
  const Outcome b = invoke({"sweep", cfg, "--scenario", "crowd_out", "--out", path("a.csv")});
  const std::string first = slurp(path("a.csv"));
  const Outcome c = invoke({"sweep", cfg, "--scenario", "crowd_out", "--out", path("b.csv")});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(first, slurp(path("b.csv")));
  EXPECT_NE(a.out.find("s: decreasing ✓"), std::string::npos) << a.out;
  EXPECT_NE(a.out.find("q: increasing ✓"), std::string::npos);
  EXPECT_EQ(first.substr(0, first.find('\n')), "param,value,c,s,p,q,n,e,utility,regime");
}

TEST_F(CliTest, SweepCrossingMarginRecordsTags) {
  const Outcome r = invoke({"sweep", ones(), "--param", "gamma3", "--from", "1", "--to", "3",
                            "--steps", "5", "--out", path("g3.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path("g3.csv"));
  EXPECT_NE(csv.find("gamma3,2,,,,,,,,Singular\n"), std::string::npos) << csv;
  EXPECT_NE(csv.find("gamma3,3,,,,,,,,Corner\n"), std::string::npos);
}

TEST_F(CliTest, SweepOtherScenarios) {
  EXPECT_EQ(invoke({"sweep", ones(), "--scenario", "qq_frontier", "--out", path("qq.csv")}).code, 0);
  EXPECT_EQ(invoke({"sweep", ones(), "--scenario", "qq_frontier", "--param", "gamma2", "--out",
                    path("qq2.csv")})
                .code,
            0);
  EXPECT_EQ(invoke({"sweep", config("half.cfg", 1, 0.5, 1), "--scenario", "future_earnings",
                    "--out", path("fe.csv")})
                .code,
            0);
  EXPECT_EQ(invoke({"sweep", ones(), "--scenario", "future_earnings", "--to", "1.5", "--out",
                    path("fe2.csv")})
                .code,
            kExitUsage);
}

TEST_F(CliTest, SweepRelaxedDiscountAboveOne) {
  const Outcome strict = invoke({"sweep", ones(), "--param", "gamma7", "--from", "1.0", "--to",
                                 "2.0", "--steps", "11", "--out", path("s.csv")});
  EXPECT_EQ(strict.code, 0);
  EXPECT_NE(strict.out.find("10 skipped"), std::string::npos);
  const Outcome relaxed = invoke({"sweep", ones(), "--param", "gamma7", "--from", "1.0", "--to",
                                  "2.0", "--steps", "11", "--relax-discount", "--out",
                                  path("r.csv")});
  EXPECT_EQ(relaxed.code, 0);
  EXPECT_NE(relaxed.out.find("s: decreasing ✓"), std::string::npos) << relaxed.out;
}

TEST_F(CliTest, SweepFlagErrors) {
  EXPECT_EQ(invoke({"sweep", ones(), "--param", "gamma7", "--from", "1", "--to", "2", "--steps",
                    "1", "--out", path("x.csv")})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"sweep", ones(), "--param", "gamma9", "--from", "1", "--to", "2", "--steps",
                    "3", "--out", path("x.csv")})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"sweep", ones(), "--scenario", "nope", "--out", path("x.csv")}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"sweep", ones(), "--scenario", "crowd_out", "--param", "gamma2", "--out",
                    path("x.csv")})
                .code,
            kExitUsage);
  EXPECT_EQ(invoke({"sweep", ones(), "--param", "gamma7", "--out", path("x.csv")}).code,
            kExitUsage);
  EXPECT_EQ(invoke({"sweep", ones(), "--param", "gamma7", "--from", "2", "--to", "1", "--steps",
                    "3", "--out", path("x.csv")})
                .code,
            kExitUsage);
}

TEST_F(CliTest, SweepBaseNotInterior) {
  EXPECT_EQ(invoke({"sweep", config("corner.cfg", 0.5, 2, 0.5), "--param", "gamma1", "--from",
                    "1", "--to", "2", "--steps", "3", "--out", path("x.csv")})
                .code,
            kExitNotInterior);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"solve"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

}  // namespace
}  // namespace household::cli
