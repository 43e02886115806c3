#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rowsynth/cli.hpp"
#include "rowsynth/policies.hpp"

namespace rowsynth::cli {
namespace {

const std::string kGolden = ROWSYNTH_GOLDEN_DIR;

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "rowsynth");
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void expect_golden(const std::vector<std::string>& args,
                   const std::string& file) {
  const Outcome o = invoke(args);
  ASSERT_EQ(o.status, kOk) << o.err;
  EXPECT_EQ(o.out, slurp(kGolden + "/" + file)) << file;
}

TEST(CliGoldenTest, Solve) {
  expect_golden({"solve", "--q", "4", "--x", "1,3,2,2", "--y", "0,1,3,0",
                 "--no-timestamp"},
                "solve_reference.json");
}

TEST(CliGoldenTest, Validate) {
  expect_golden({"validate", "--q", "4", "--x", "1,3,2,2", "--y", "0,1,3,0",
                 "--schedule", "Y,Y,-,Y,Y,X,-,X,-,-,X,-,-,-,X",
                 "--no-timestamp"},
                "validate_schedule_b.json");
}

TEST(CliGoldenTest, Oracle) {
  expect_golden({"oracle", "--q", "4", "--x", "1,3,2,2", "--y", "0,1,3,0",
                 "--no-timestamp"},
                "oracle_reference.json");
}

TEST(CliGoldenTest, SimulateWithTrace) {
  expect_golden({"simulate", "--q", "2", "--x", "011", "--y", "011",
                 "--policy", "x-first", "--trace", "--no-timestamp"},
                "simulate_trace.json");
}

TEST(CliGoldenTest, ChainStationary) {
  expect_golden({"chain", "--stationary"}, "chain_stationary.csv");
}

TEST(CliGoldenTest, Rotations) {
  expect_golden({"rotations", "--q", "2,3", "--rotations", "2000"},
                "rotations.csv");
}

TEST(CliGoldenTest, Bounds) {
  expect_golden({"bounds", "--q", "2,3,4", "--L", "250,1000"}, "bounds.csv");
}

TEST(CliGoldenTest, Experiment) {
  expect_golden({"experiment", "--q", "2", "--L", "200", "--trials", "20",
                 "--policy", "lf"},
                "experiment.csv");
}

TEST(CliGoldenTest, ExperimentSweepFromConfig) {
  expect_golden({"experiment", "--config", kGolden + "/sweep.yaml"},
                "experiment_sweep.csv");
}

TEST(CliTest, OutputIsIndependentOfThreadCount) {
  const std::vector<std::string> base{"experiment", "--q", "3", "--L", "150",
                                      "--trials", "25", "--policy", "random"};
  auto with_threads = [&](const char* n) {
    auto args = base;
    args.push_back("--threads");
    args.push_back(n);
    return invoke(args);
  };
  const Outcome one = with_threads("1");
  ASSERT_EQ(one.status, kOk);
  EXPECT_EQ(one.out, with_threads("2").out);
  EXPECT_EQ(one.out, with_threads("5").out);
}

TEST(CliTest, FlagsOverrideConfigValues) {
  const Outcome o = invoke({"experiment", "--config", kGolden + "/sweep.yaml",
                            "--trials", "3", "--L", "50"});
  ASSERT_EQ(o.status, kOk) << o.err;
  std::istringstream lines(o.out);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("2,50,", 0), 0u) << line;
    EXPECT_NE(line.find(",3,55930,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 2);
}

TEST(CliTest, SeedFlagAcceptsHexAndChangesResults) {
  const Outcome a = invoke({"--seed", "0x10", "experiment", "--L", "50",
                            "--trials", "5"});
  const Outcome b = invoke({"experiment", "--L", "50", "--trials", "5",
                            "--seed", "16"});
  ASSERT_EQ(a.status, kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, invoke({"experiment", "--L", "50", "--trials", "5"}).out);
}

TEST(CliTest, EnvironmentDefaultsAndFlagPrecedence) {
  ::setenv("ROWSYNTH_FORMAT", "json", 1);
  ::setenv("ROWSYNTH_SEED", "16", 1);
  const Outcome env = invoke({"bounds", "--q", "2", "--L", "10",
                              "--no-timestamp"});
  const Outcome flag = invoke({"--format", "csv", "--seed", "3", "bounds",
                               "--q", "2", "--L", "10"});
  ::unsetenv("ROWSYNTH_FORMAT");
  ::unsetenv("ROWSYNTH_SEED");
  ASSERT_EQ(env.status, kOk) << env.err;
  EXPECT_NE(env.out.find("\"seed\": 16"), std::string::npos) << env.out;
  EXPECT_EQ(flag.out.rfind("q,L,", 0), 0u) << flag.out;
}

TEST(CliTest, JsonMetadataHasTimestampUnlessSuppressed) {
  const Outcome o = invoke({"solve", "--x", "01", "--y", "10"});
  ASSERT_EQ(o.status, kOk);
  EXPECT_NE(o.out.find("\"toolVersion\": \"0.1.0\""), std::string::npos);
  EXPECT_NE(o.out.find("\"timestamp\""), std::string::npos);
  const Outcome quiet = invoke({"solve", "--x", "01", "--y", "10",
                                "--no-timestamp"});
  EXPECT_EQ(quiet.out.find("timestamp"), std::string::npos);
}

TEST(CliTest, OutputFile) {
  const std::string path = ::testing::TempDir() + "rowsynth_cli_out.csv";
  const Outcome o = invoke({"--output", path, "bounds", "--q", "2"});
  ASSERT_EQ(o.status, kOk);
  EXPECT_TRUE(o.out.empty());
  EXPECT_EQ(slurp(path).rfind("q,L,", 0), 0u);
  std::remove(path.c_str());
}

TEST(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({}).status, kUsageError);
  EXPECT_EQ(invoke({"bogus"}).status, kUsageError);
  EXPECT_EQ(invoke({"solve", "--x", "01"}).status, kUsageError);
  EXPECT_EQ(invoke({"solve", "--x", "01", "--y", "1", "--frobnicate"}).status,
            kUsageError);
  EXPECT_EQ(invoke({"--format", "xml", "bounds"}).status, kUsageError);

  const Outcome bad_schedule = invoke({"validate", "--x", "0", "--y", "0",
                                       "--schedule", "X"});
  EXPECT_EQ(bad_schedule.status, kValidationError);
  EXPECT_NE(bad_schedule.err.find("error:"), std::string::npos);
  EXPECT_EQ(invoke({"validate", "--x", "0", "--y", "1", "--schedule", "Y"})
                .status,
            kValidationError);
  EXPECT_EQ(invoke({"solve", "--x", "02", "--y", "1"}).status,
            kValidationError);
  EXPECT_EQ(invoke({"experiment", "--q", "3", "--policy", "lf1"}).status,
            kValidationError);
  EXPECT_EQ(invoke({"experiment", "--config", "/nonexistent.yaml"}).status,
            kValidationError);
  EXPECT_EQ(invoke({"oracle", "--x", "000000000000", "--y", "000000000000",
                    "--budget", "10"})
                .status,
            kValidationError);
}

TEST(CliTest, HelpListsSubcommandsAndPolicies) {
  const Outcome o = invoke({"--help"});
  EXPECT_EQ(o.status, kOk);
  for (const char* sub : {"simulate", "solve", "oracle", "validate",
                          "rotations", "chain", "bounds", "experiment",
                          "conjecture"}) {
    EXPECT_NE(o.out.find(sub), std::string::npos) << sub;
  }
  for (const auto& p : policy_catalog()) {
    EXPECT_NE(o.out.find(p.cli_name), std::string::npos) << p.cli_name;
  }
  EXPECT_NE(o.out.find("0xDA7A"), std::string::npos);
}

TEST(CliTest, ChainMatrixAndJson) {
  const Outcome m = invoke({"chain", "--matrix"});
  ASSERT_EQ(m.status, kOk);
  EXPECT_NE(m.out.find("\n12,0,0,0,1,0,0,0,0,0,0,0,0,0,0,0,0\n"),
            std::string::npos);
  EXPECT_EQ(m.out.find("stationary"), std::string::npos);
  const Outcome j = invoke({"--format", "json", "chain", "--no-timestamp"});
  ASSERT_EQ(j.status, kOk);
  EXPECT_NE(j.out.find("\"rate\": \"6/7\""), std::string::npos);
  EXPECT_NE(j.out.find("\"pi\": \"11/84\""), std::string::npos);
}

TEST(CliTest, ConjectureReport) {
  const Outcome o = invoke({"conjecture", "--L", "40", "--trials", "10"});
  ASSERT_EQ(o.status, kOk) << o.err;
  EXPECT_EQ(o.out.rfind("q,L,trials,seed,optimalMean", 0), 0u);
  EXPECT_NE(o.out.find(",2.160000\n"), std::string::npos) << o.out;
}

}  // namespace
}  // namespace rowsynth::cli
