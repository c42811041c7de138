#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "zeno/cli.hpp"
#include "zeno/format.hpp"

using namespace zeno::cli;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("zeno_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Quantity, Parsing) {
  EXPECT_EQ(parse_quantity("500nm").unit, "nm");
  EXPECT_DOUBLE_EQ(parse_quantity("500nm").value, 500.0);
  EXPECT_EQ(parse_quantity("3e12 s^-1").unit, "s^-1");
  EXPECT_EQ(parse_quantity("10").unit, "");
  EXPECT_EQ(parse_quantity("1e10W/cm2").unit, "W/cm2");
  EXPECT_THROW(parse_quantity("nm"), UsageError);
}

TEST(Cli, DemoValue) {
  const Result r = call({"demo", "--N", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("10,0.780546069781\n"), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, CsvProvenanceAndUnits) {
  const auto l = lines(call({"curve", "--samples", "3", "--seed", "5"}).out);
  ASSERT_GE(l.size(), 8u);
  EXPECT_EQ(l[0].rfind("# zeno ", 0), 0u);
  EXPECT_EQ(l[1], "# seed: 5");
  EXPECT_EQ(l[2].rfind("# config_hash: ", 0), 0u);
  EXPECT_EQ(l[4].rfind("# units: xi_2gamma=1", 0), 0u);
  EXPECT_EQ(l[5], "xi_2gamma,p1_exact,p2_exact,p1_approx,p2_approx");
  EXPECT_EQ(l.size(), 9u);
}

TEST(Cli, JsonOutput) {
  const Result r = call({"demo", "--N", "10", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "demo");
  EXPECT_EQ(j["provenance"]["seed"], 0);
  EXPECT_DOUBLE_EQ(j["tables"][0]["rows"][0][1].get<double>(), 0.780546069781);
  EXPECT_EQ(j["tables"][0]["columns"][1]["unit"], "1");
}

TEST(Cli, ControlChangesGateError) {
  const Result a = call({"gate", "--branches", "3", "--N", "1", "--kappa", "1e9", "--control"});
  const Result b = call({"gate", "--branches", "3", "--N", "1", "--kappa", "1e9"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  const auto ra = lines(a.out).back(), rb = lines(b.out).back();
  EXPECT_NE(ra, rb);
  // single segment, eps = pi/sqrt2: with control the middle branch is absorbed completely
  const double c = std::cos(3.14159265358979323846 / std::sqrt(2.0));
  EXPECT_NE(ra.find(",1,"), std::string::npos);
  EXPECT_NE(ra.find(zeno::fmt::num(1.0 - c * c)), std::string::npos);
}

TEST(Cli, UnknownParameterAndBadUnit) {
  Result r = call({"demo", "--N", "3eV"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'N'"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  r = call({"demo", "--bogus", "1"});
  EXPECT_EQ(r.code, 2);
  r = call({"absorber", "--wavelength", "500eV"});
  EXPECT_EQ(r.code, 2);
  r = call({"absorber", "--detuning", "1e12Hz"});
  EXPECT_EQ(r.code, 0);
  r = call({"demo", "--N", "2.5"});
  EXPECT_EQ(r.code, 2);
}

TEST(Cli, InfeasibleDesignExitCode) {
  const Result r = call({"design", "--P", "0.01", "--N_max", "20"});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, IoFailure) {
  EXPECT_EQ(call({"demo", "--output", "/nonexistent-dir/x.csv"}).code, 4);
  EXPECT_EQ(call({"--config", "/nonexistent-dir/c.json"}).code, 4);
}

TEST(Config, MinimalFile) {
  const std::string p = tmp_path("minimal.json");
  write_file(p, R"({"command":"demo","parameters":{"N":{"value":1,"unit":"dimensionless"}}})");
  const Result r = call({"--config", p});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\n1,"), std::string::npos);
  const std::string row = lines(r.out).back();
  EXPECT_LT(std::stod(row.substr(2)), 1e-30);
}

TEST(Config, UnitMismatchNamesKey) {
  const std::string p = tmp_path("badunit.json");
  write_file(p, R"({"command":"demo","parameters":{"N":{"value":1,"unit":"eV"}}})");
  const Result r = call({"--config", p});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("'N'"), std::string::npos);
}

TEST(Config, SchemaViolations) {
  EXPECT_THROW(parse_config_text(R"({"command":"demo","extra":1})"), UsageError);
  EXPECT_THROW(parse_config_text(R"({"parameters":{"N":3}})"), UsageError);
  EXPECT_THROW(parse_config_text("not json"), UsageError);
  RunConfig c = parse_config_text(R"({"command":"demo","parameters":{"X":{"value":1}}})");
  try {
    effective_config(c);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("'X'"), std::string::npos);
  }
}

TEST(Config, FlagsOverrideFile) {
  const std::string p = tmp_path("override.json");
  write_file(p, R"({"command":"demo","parameters":{"N":{"value":1,"unit":"1"}}})");
  const Result r = call({"--config", p, "demo", "--N", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("10,0.780546069781"), std::string::npos);
}

TEST(Config, PrintConfigRoundTrip) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"absorber", "--wavelength", "600nm", "--detuning", "0.002eV"},
        std::vector<std::string>{"enhance", "--seed", "99", "--mc_trials", "8", "--mc_emitters", "300"},
        std::vector<std::string>{"design", "--P", "0.5", "--N_max", "30", "--strategy", "balanced"},
        std::vector<std::string>{"gate", "--branches", "3", "--N", "4", "--control"}}) {
    const Result direct = call(args);
    ASSERT_EQ(direct.code, 0) << direct.err;
    std::vector<std::string> pargs = args;
    pargs.push_back("--print-config");
    const Result printed = call(pargs);
    ASSERT_EQ(printed.code, 0);
    const std::string p = tmp_path("roundtrip.json");
    write_file(p, printed.out);
    const Result reloaded = call({"--config", p});
    ASSERT_EQ(reloaded.code, 0) << reloaded.err;
    EXPECT_EQ(reloaded.out, direct.out);
  }
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"enhance", "--seed", "3", "--mc_trials", "16", "--mc_emitters", "500"};
  EXPECT_EQ(call(args).out, call(args).out);
  EXPECT_NE(call(args).out, call({"enhance", "--seed", "4", "--mc_trials", "16", "--mc_emitters", "500"}).out);
}

TEST(Cli, TablesCsvShape) {
  const Result r = call({"tables"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("P_error,N,P2gamma_seg,P1gamma_seg,kappa,enhancement\n"), std::string::npos);
  EXPECT_NE(r.out.find("# table: small_kappa"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const std::string p = tmp_path("out.csv");
  std::remove(p.c_str());
  const Result r = call({"demo", "--output", p});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_NE(ss.str().find("0.780546069781"), std::string::npos);
}
