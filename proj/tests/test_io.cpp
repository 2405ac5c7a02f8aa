#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "lib/matrix_file.hpp"
#include "lib/suites.hpp"
#include "srd/errors.hpp"

using namespace srd;
using nlohmann::json;

namespace {

std::filesystem::path fixture(const char* name) { return std::filesystem::path(SRD_FIXTURES) / name; }

}  // namespace

TEST(MatrixFile, ReadsStatesAndChannels) {
  const DensityMatrix rho = io::to_density(io::read_matrix_file(fixture("qubit_rho.json")));
  EXPECT_NEAR(rho.matrix()(0, 1).imag(), -0.1, 1e-15);
  const BipartiteState ab = io::to_bipartite(io::read_matrix_file(fixture("product_rho.json")));
  EXPECT_EQ(ab.dim_a(), 2);
  EXPECT_EQ(ab.dim_b(), 2);
  const QuantumChannel tr = io::to_channel(io::read_matrix_file(fixture("channel_trace_b.json")));
  EXPECT_EQ(tr.dim_in(), 4);
  EXPECT_EQ(tr.dim_out(), 2);
  EXPECT_THROW(io::to_channel(io::read_matrix_file(fixture("not_trace_preserving.json"))), NotTracePreserving);
}

TEST(MatrixFile, RoundTripKeepsEveryBit) {
  Rng rng(1);
  const DensityMatrix rho = random_density(3, 2, rng);
  const auto path = std::filesystem::temp_directory_path() / "srd_roundtrip.json";
  io::write_json(io::state_json(rho), path);
  const DensityMatrix back = io::to_density(io::read_matrix_file(path));
  EXPECT_EQ(back.matrix(), rho.matrix());

  const QuantumChannel ch = random_channel(2, 3, 2, rng);
  const QuantumChannel ch2 = io::to_channel(io::parse_matrix_file(json::parse(io::channel_json(ch).dump())));
  ASSERT_EQ(ch2.kraus().size(), ch.kraus().size());
  for (std::size_t k = 0; k < ch.kraus().size(); ++k) EXPECT_EQ(ch2.kraus()[k], ch.kraus()[k]);
  std::filesystem::remove(path);
}

TEST(MatrixFile, ParseErrors) {
  EXPECT_THROW(io::read_matrix_file(fixture("bad_shape.json")), ParseError);
  EXPECT_THROW(io::read_matrix_file(fixture("does_not_exist.json")), ParseError);
  EXPECT_THROW(io::parse_matrix_file(json{{"kind", "state"}}), ParseError);
  EXPECT_THROW(io::parse_matrix_file(json{{"kind", "tensor"}, {"dim", 1}, {"re", {1.0}}}), ParseError);
  EXPECT_THROW(io::parse_matrix_file(json{{"kind", "state"}, {"dim", 1}, {"re", {"x"}}}), ParseError);
  EXPECT_THROW(io::parse_matrix_file(json::array()), ParseError);
}

TEST(MatrixFile, NumbersAndInfinity) {
  EXPECT_EQ(io::number(std::numeric_limits<double>::infinity()), json("inf"));
  EXPECT_EQ(io::number(0.25), json(0.25));
}

TEST(Suites, RegistryAndErrors) {
  EXPECT_EQ(suites::suite_names().size(), 12u);
  EXPECT_THROW(suites::default_tolerances("nope"), UnknownSuite);
  suites::SuiteConfig cfg;
  cfg.name = "nope";
  EXPECT_THROW(suites::run_suite(cfg), UnknownSuite);
  cfg.name = "dpi-holds";
  cfg.trials = 2;
  cfg.tolerances["bogus"] = 1.0;
  EXPECT_THROW(suites::run_suite(cfg), ParseError);
}

TEST(Suites, ReportsAreDeterministic) {
  suites::SuiteConfig cfg;
  cfg.name = "dpi-holds";
  cfg.seed = 7;
  cfg.trials = 20;
  json a = suites::to_json(suites::run_suite(cfg));
  json b = suites::to_json(suites::run_suite(cfg));
  a.erase("wall_time_seconds");
  b.erase("wall_time_seconds");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["passed"].get<bool>(), a["failures"].empty());
  EXPECT_EQ(a["failure_count"].get<int>(), 0);
  EXPECT_EQ(a["trials"].get<int>(), 20);
}

TEST(Suites, UnmetMarginProducesFailureRecords) {
  suites::SuiteConfig cfg;
  cfg.name = "entanglement-fidelity";
  cfg.trials = 10;
  cfg.tolerances["fe_mixed"] = 10.0;
  const suites::SuiteReport r = suites::run_suite(cfg);
  EXPECT_FALSE(r.passed());
  const json j = suites::to_json(r);
  EXPECT_FALSE(j["passed"].get<bool>());
  EXPECT_EQ(j["failure_count"].get<std::size_t>(), r.failures.size());
  EXPECT_TRUE(j["failures"][0].contains("trial"));
}
