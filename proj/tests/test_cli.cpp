#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "aolab/error.hpp"
#include "aolab/generators.hpp"
#include "aolab/serialize.hpp"
#include "cli.hpp"

namespace aolab::cli {
namespace {

const std::string kFixtures = AOLAB_FIXTURE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "aolab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("aolab_cli_test_" + name);
}

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("1"), cplx(1.0, 0.0));
  EXPECT_EQ(parse_complex("-0.5+2i"), cplx(-0.5, 2.0));
  EXPECT_EQ(parse_complex("i"), cplx(0.0, 1.0));
  EXPECT_EQ(parse_complex("-i"), cplx(0.0, -1.0));
  EXPECT_EQ(parse_complex("1-i"), cplx(1.0, -1.0));
  EXPECT_EQ(parse_complex("-3.25e-1i"), cplx(0.0, -0.325));
  EXPECT_EQ(parse_complex("1e-2+1e+1i"), cplx(0.01, 10.0));
  EXPECT_EQ(parse_complex("@0.25"), cplx(0.0, 1.0));
  EXPECT_EQ(parse_complex("@0.5"), cplx(-1.0, 0.0));
  EXPECT_NEAR(std::arg(parse_complex("@0.125")), std::numbers::pi / 4.0, 1e-15);
  EXPECT_THROW(parse_complex(""), Error);
  EXPECT_THROW(parse_complex("1+2j"), Error);
  EXPECT_THROW(parse_complex("abc"), Error);
}

TEST(ParseEigenvalues, CommaSeparated) {
  const auto v = parse_eigenvalues("1,-1, i ,@0.75");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[2], cplx(0.0, 1.0));
  EXPECT_EQ(v[3], cplx(0.0, -1.0));
}

TEST(MixSeed, DistinctPerTrial) {
  EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
  EXPECT_NE(mix_seed(0, 0), mix_seed(1, 0));
  EXPECT_EQ(mix_seed(7, 3), mix_seed(7, 3));
}

TEST(Analyze, Dft4IsUnitary) {
  const auto r = invoke({"analyze", "--input", kFixtures + "/dft4.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["dim"], 4);
  EXPECT_EQ(doc["criteria"]["unitary"], true);
  EXPECT_EQ(doc["criteria"]["consistent"], true);
  EXPECT_EQ(doc["minimal_polynomial"]["degree"], 3);
}

TEST(Analyze, JordanReportsWitnessAndBound) {
  const auto r = invoke({"analyze", "--input", kFixtures + "/jordan.json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const Json doc = Json::parse(r.out);
  const Json& c = doc["criteria"];
  for (const char* key : {"unitary", "normaloid", "contraction", "orbits_convergent", "power_bounded"}) {
    EXPECT_EQ(c[key], false) << key;
  }
  EXPECT_EQ(c["witness"][1][0], 1.0);
  EXPECT_EQ(doc["growth_bound"]["kappa"], 1);
  EXPECT_EQ(doc["growth_bound"]["holds"], true);
}

TEST(Analyze, InputErrorsExitOne) {
  EXPECT_EQ(invoke({"analyze", "--input", kFixtures + "/truncated.json"}).code, kInputError);
  EXPECT_EQ(invoke({"analyze", "--input", kFixtures + "/missing.json"}).code, kInputError);
  EXPECT_EQ(invoke({"analyze"}).code, kInputError);
  EXPECT_EQ(invoke({"analyze", "--input", kFixtures + "/dft4.json", "--window", "5000"}).code, kInputError);
  EXPECT_EQ(invoke({"analyze", "--input", kFixtures + "/dft4.json", "--seed", "-4"}).code, kInputError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kInputError);
}

TEST(Analyze, CsvSeries) {
  const auto csv = scratch("series.csv");
  const auto r = invoke({"analyze", "--input", kFixtures + "/jordan.json", "--csv", csv.string(), "--nmax", "200"});
  ASSERT_EQ(r.code, kOk) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,power_norm,bound");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 200);
  std::filesystem::remove(csv);
}

TEST(Analyze, OutputIsByteDeterministic) {
  const auto a = invoke({"analyze", "--input", kFixtures + "/jordan.json", "--seed", "9"});
  const auto b = invoke({"analyze", "--input", kFixtures + "/jordan.json", "--seed", "9"});
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(Analyze, SeedFromEnvironment) {
  const auto explicit_seed = invoke({"analyze", "--input", kFixtures + "/dft4.json", "--seed", "5"});
  ::setenv("AOLAB_SEED", "5", 1);
  const auto from_env = invoke({"analyze", "--input", kFixtures + "/dft4.json"});
  ::setenv("AOLAB_SEED", "6", 1);
  const auto flag_wins = invoke({"analyze", "--input", kFixtures + "/dft4.json", "--seed", "5"});
  ::unsetenv("AOLAB_SEED");
  EXPECT_EQ(explicit_seed.out, from_env.out);
  EXPECT_EQ(explicit_seed.out, flag_wins.out);
  EXPECT_EQ(Json::parse(from_env.out)["config"]["seed"], 5);
}

TEST(Generate, RotationAndFixtures) {
  const auto r = invoke({"generate", "--kind", "rotation", "--dim", "1", "--theta", "0.25"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(parse_matrix(r.out), CMatrix::from_rows({{cplx(0.0, 1.0)}}));

  const auto o = invoke({"generate", "--kind", "oblique", "--dim", "2", "--eigenvalues", "1,-1", "--cond-cap", "3",
                         "--seed", "0"});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(parse_matrix(o.out), fixtures::oblique_counterexample());
}

TEST(Generate, FeedsAnalyze) {
  const auto path = scratch("generated.json");
  ASSERT_EQ(invoke({"generate", "--kind", "planted", "--dim", "6", "--scale", "0.8", "--seed", "3", "--out",
                    path.string()})
                .code,
            kOk);
  const auto r = invoke({"analyze", "--input", path.string()});
  EXPECT_EQ(r.code, kOk) << r.err;
  std::filesystem::remove(path);
}

TEST(Generate, Errors) {
  EXPECT_EQ(invoke({"generate", "--kind", "hermitian"}).code, kInputError);
  EXPECT_EQ(invoke({"generate", "--kind", "oblique", "--dim", "2", "--eigenvalues", "1,1"}).code, kInputError);
  EXPECT_EQ(invoke({"generate", "--kind", "jordan", "--dim", "1"}).code, kInputError);
  EXPECT_EQ(invoke({"generate", "--kind", "unitary", "--dim", "65", "--eigenvalues", "1"}).code, kInputError);
}

TEST(Verify, TheoremSuitePasses) {
  const auto r = invoke({"verify", "--suite", "theorem", "--trials", "50", "--seed", "1"});
  EXPECT_EQ(r.code, kOk) << r.out << r.err;
  EXPECT_NE(r.out.find("all properties pass"), std::string::npos);
}

TEST(Verify, GrowthStabilityScalarSuitesPass) {
  for (const char* suite : {"growth", "stability", "scalar"}) {
    const auto r = invoke({"verify", "--suite", suite, "--trials", "20", "--seed", "2"});
    EXPECT_EQ(r.code, kOk) << suite << "\n" << r.out << r.err;
  }
}

TEST(Verify, UnknownSuiteRejected) { EXPECT_EQ(invoke({"verify", "--suite", "everything"}).code, kInputError); }

TEST(Verify, TalliesAreReproducible) {
  RunConfig cfg;
  cfg.trials = 5;
  cfg.analysis.seed = 11;
  const auto a = run_suite("scalar", cfg);
  const auto b = run_suite("scalar", cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].name, b[k].name);
    EXPECT_EQ(a[k].passed, b[k].passed);
  }
}

}  // namespace
}  // namespace aolab::cli
