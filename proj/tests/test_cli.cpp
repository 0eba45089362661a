#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Result cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto err_path =
      std::filesystem::temp_directory_path() / ("m3w_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  const std::string cmd = env + " '" MIMO3WAY_CLI_PATH "' " + args + " 2>'" + err_path.string() + "'";
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err_path);
  std::filesystem::remove(err_path);
  return r;
}

// One line, "error[<code>]: ..." with a machine-readable code.
void expect_error_line(const Result& r, const std::string& code) {
  static const std::regex shape(R"(^error\[[a-z-]+\]: [^\n]*\n$)");
  EXPECT_TRUE(std::regex_match(r.err, shape)) << r.err;
  EXPECT_EQ(r.err.rfind("error[" + code + "]", 0), 0u) << r.err;
}

using nlohmann::json;

}  // namespace

TEST(Cli, BoundsExplicitSplit) {
  const auto r = cli("bounds --mt 3,1,1 --mr 0,2,2 --msgs unicast --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["bounds"]["combined_genie"], "4/1");
  const auto& binding = j["bounds"]["binding_terms"];
  EXPECT_NE(std::find(binding.begin(), binding.end(), "ΣM_R"), binding.end());
}

TEST(Cli, BoundsTableNamesBindingTerm) {
  const auto r = cli("bounds --mt 3,1,1 --mr 0,2,2 --msgs unicast");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("ΣM_R"), std::string::npos);
  EXPECT_NE(r.out.find("4.0000"), std::string::npos);
}

TEST(Cli, BoundsBroadcastAllocated) {
  const auto r = cli("bounds --m 5,3,2 --msgs broadcast --allocate --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["bounds"]["combined_cutset"], "5/1");
  EXPECT_EQ(j["allocation"]["optimal_dof"], "5/1");
  EXPECT_EQ(j["split"]["mt"], json({"2/1", "1/1", "2/1"}));
}

TEST(Cli, BoundsNoTransmitters) {
  const auto r = cli("bounds --mt 0,0,0 --mr 1,1,1 --format json");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(json::parse(r.out)["bounds"]["combined_genie"], "0/1");
}

TEST(Cli, BoundsFractionalSplit) {
  const auto r = cli("bounds --mt 5,1/3,1/3 --mr 0,11/3,5/3 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["bounds"]["combined_genie"], "16/3");
}

TEST(Cli, AllocateMethodsAgree) {
  for (const char* method : {"closed-form", "enumerated", "bruteforce"}) {
    const auto r = cli(std::string("allocate --m 5,4,2 --format json --method ") + method);
    ASSERT_EQ(r.exit_code, 0) << method << r.err;
    EXPECT_EQ(json::parse(r.out)["optimal_dof"], "16/3") << r.out;
  }
}

TEST(Cli, SortFlag) {
  EXPECT_NE(cli("allocate --m 2,4,5 --format json").exit_code, 0);
  const auto r = cli("allocate --m 2,4,5 --sort --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["config"]["m"], json({5, 4, 2}));
}

TEST(Cli, VerifyScheme) {
  const auto r = cli("verify-scheme --m 3,3,3 --scheme uni-a --seed 1");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["status"], "Valid");
  EXPECT_EQ(j["achieved_dof"], "4/1");
}

TEST(Cli, VerifySchemePreconditionError) {
  const auto r = cli("verify-scheme --m 2,1,1 --scheme uni-a");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_TRUE(r.out.empty());
  expect_error_line(r, "precondition");
  EXPECT_NE(r.err.find("M_l >= 3"), std::string::npos);
}

TEST(Cli, SlopeBroadcast) {
  const auto r = cli("slope --m 5,3,2 --scheme bcast --snr 30,50 --trials 50 --format json");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["slope_dof"].get<double>(), 5.0, 0.2);
}

TEST(Cli, SlopeCsvColumns) {
  const auto r = cli("slope --m 4,2,1 --scheme uni-b --snr 20,30,40 --trials 3 --format csv");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("snr_db,mean_rate\n", 0), 0u);
}

TEST(Cli, SlopeOutsideToleranceExitsTwo) {
  const auto r = cli("slope --m 3,3,3 --scheme uni-a --snr 0,30 --trials 3 --tol 0.01 --format json");
  EXPECT_EQ(r.exit_code, 2);
  expect_error_line(r, "validation");
}

TEST(Cli, SweepCsv) {
  const auto r = cli("sweep --m3 1 --max 4");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("m1_over_m3,m2_over_m3,dof_over_m3\n", 0), 0u);
  EXPECT_NE(r.out.find("\n2.0000,1.0000,2.0000\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n1.0000,1.0000,1.3333\n"), std::string::npos);
  EXPECT_NE(r.out.find("\n4.0000,2.0000,3.0000\n"), std::string::npos);
}

TEST(Cli, JsonIsByteIdenticalAcrossRuns) {
  for (const char* args : {"verify-scheme --m 5,4,3 --scheme uni-a --seed 9",
                           "slope --m 4,2,1 --scheme uni-b --trials 5 --seed 3 --format json",
                           "allocate --m 7,5,4 --format json", "sweep --m3 2 --max 6 --format json"}) {
    const auto a = cli(args), b = cli(args);
    ASSERT_EQ(a.exit_code, 0) << args << a.err;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, SeedFromEnvironment) {
  const auto by_env = cli("verify-scheme --m 4,4,3 --scheme uni-a", "M3W_SEED=77");
  const auto by_flag = cli("verify-scheme --m 4,4,3 --scheme uni-a --seed 77");
  ASSERT_EQ(by_env.exit_code, 0);
  EXPECT_EQ(by_env.out, by_flag.out);
  const auto fallback = cli("verify-scheme --m 4,4,3 --scheme uni-a");
  EXPECT_NE(fallback.out.find("\"seed\": 12345"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  for (const char* args : {"", "frobnicate", "bounds --mt 1,1 --mr 1,1,1", "bounds --m 3,3,3",
                           "allocate --m 3,3,x", "verify-scheme --m 3,3,3", "slope --m 3,3,3 --scheme nope",
                           "sweep --format xml"}) {
    const auto r = cli(args);
    EXPECT_EQ(r.exit_code, 1) << args;
    expect_error_line(r, "usage");
  }
}

TEST(Cli, DomainErrors) {
  struct Case {
    const char* args;
    const char* code;
  };
  for (const auto& c : {Case{"allocate --m 1,2,3", "invalid-input"}, Case{"verify-scheme --m 3,3,3 --scheme uni-b", "regime-mismatch"},
                        Case{"bounds --mt 1,-1,1 --mr 1,1,1", "invalid-input"}, Case{"sweep --m3 3 --max 2", "invalid-input"}}) {
    const auto r = cli(c.args);
    EXPECT_EQ(r.exit_code, 2) << c.args;
    expect_error_line(r, c.code);
  }
}
