#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <json.hpp>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(SRD_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fx(const char* name) { return std::string(SRD_FIXTURES) + "/" + name; }

json run_json(const std::string& args) {
  const Run r = run(args);
  EXPECT_EQ(r.code, 0) << args;
  return json::parse(r.out);
}

}  // namespace

TEST(Cli, DivergenceOfStateWithItselfIsZero) {
  const json j = run_json("divergence --rho " + fx("qubit_rho.json") + " --sigma " + fx("qubit_rho.json") +
                          " --alpha 2");
  EXPECT_NEAR(j["value"].get<double>(), 0.0, 1e-12);
}

TEST(Cli, PureAgainstMaximallyMixedIsOneBit) {
  const json j = run_json("divergence --rho " + fx("qubit_zero.json") + " --sigma " +
                          fx("qubit_maximally_mixed.json") + " --alpha 2");
  EXPECT_NEAR(j["value"].get<double>(), 1.0, 1e-12);
}

TEST(Cli, InfiniteDivergenceIsReportedAsString) {
  const json j = run_json("divergence --rho " + fx("qubit_plus.json") + " --sigma " + fx("qubit_zero.json") +
                          " --alpha 2");
  EXPECT_EQ(j["value"], "inf");
}

TEST(Cli, EqualityVerdicts) {
  const std::string pair = " --rho " + fx("qubit_rho.json") + " --sigma " + fx("qubit_sigma.json") + " --alpha 2";
  EXPECT_EQ(run_json("equality" + pair + " --channel " + fx("channel_hadamard.json"))["verdict"], "equal");
  const json damp = run_json("equality" + pair + " --channel " + fx("channel_amplitude_damping.json"));
  EXPECT_EQ(damp["verdict"], "not-equal");
  EXPECT_GT(damp["gap"].get<double>(), 0.0);
  const json prod = run_json("equality --rho " + fx("product_rho.json") + " --sigma " + fx("product_sigma.json") +
                             " --channel " + fx("channel_trace_b.json") + " --alpha 2 --route stinespring");
  EXPECT_EQ(prod["verdict"], "equal");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("divergence --rho " + fx("bad_shape.json") + " --sigma " + fx("qubit_rho.json")).code, 2);
  EXPECT_EQ(run("divergence --rho").code, 2);
  EXPECT_EQ(run("suite no-such-suite").code, 2);
  EXPECT_EQ(run("equality --rho " + fx("qubit_rho.json") + " --sigma " + fx("qubit_sigma.json") + " --channel " +
                fx("not_trace_preserving.json") + " --alpha 2")
                .code,
            3);
  EXPECT_EQ(run("divergence --kind qtilde --rho " + fx("qubit_plus.json") + " --sigma " + fx("qubit_zero.json")).code,
            3);
  EXPECT_EQ(run("divergence --rho " + fx("product_rho.json") + " --sigma " + fx("qubit_rho.json")).code, 3);
}

TEST(Cli, SuiteRunsAndReports) {
  const json j = run_json("suite dpi-holds --trials 100 --seed 3");
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["trials"].get<int>(), 100);
}

TEST(Cli, ViolationSearchBelowHalf) {
  const json j = run_json("violation-search --alpha 0.3 --trials 200");
  EXPECT_LT(j["summary"]["best_gap"].get<double>(), 0.0);
}
