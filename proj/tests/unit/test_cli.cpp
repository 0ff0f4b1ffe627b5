#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "jdx/cli.hpp"
#include "oracles.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run jdx_run(std::vector<std::string> args) {
  args.insert(args.begin(), "jdx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = jdx::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

std::string pure_file() {
  return write_file("jdx_pure.json", R"j({"preset": "pure-levy-tempered-stable"})j");
}

}  // namespace

TEST(Cli, CheckPasses) {
  const auto r = jdx_run({"check", "--model", pure_file()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["status"], "PASS");
}

TEST(Cli, CheckFailsForVanishingSigma) {
  const auto p = write_file("jdx_sx.json", R"j({"custom": {"b": "0", "sigma": "x", "gamma": "zeta",
      "h": "exp(-5*abs(zeta))*abs(zeta)^(-1.5)"}})j");
  const auto r = jdx_run({"check", "--model", p});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(json::parse(r.out)["status"], "FAIL");
}

TEST(Cli, MalformedJsonIsParseError) {
  const auto p = write_file("jdx_bad.json", R"j({"preset": )j");
  const auto r = jdx_run({"check", "--model", p});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("parse error"), std::string::npos);
}

TEST(Cli, UnknownSubcommandIsUsageError) {
  EXPECT_EQ(jdx_run({"frobnicate"}).code, 2);
  EXPECT_EQ(jdx_run({"tail", "--y", "1"}).code, 2);
}

TEST(Cli, TailJson) {
  const auto r = jdx_run({"tail", "--model", pure_file(), "--x", "0", "--y", "1", "--eps", "0.25"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const auto& rec = j.is_array() ? j[0] : j;
  EXPECT_GT(rec["A1"].get<double>(), 0.0);
  const double sum = rec["parts"]["D"].get<double>() + rec["parts"]["J1"].get<double>() +
                     rec["parts"]["J2"].get<double>();
  EXPECT_NEAR(sum, rec["A2"].get<double>(), 1e-15);
}

TEST(Cli, TailRejectsNonPositiveLevel) {
  EXPECT_EQ(jdx_run({"tail", "--model", pure_file(), "--y", "0"}).code, 2);
  EXPECT_EQ(jdx_run({"tail", "--model", pure_file(), "--y", "-1"}).code, 2);
}

TEST(Cli, TailEpsSweep) {
  const auto r = jdx_run({"tail", "--model", pure_file(), "--y", "1", "--eps-sweep", "0.5,0.25,0.125"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const auto& rec = j.is_array() ? j[0] : j;
  ASSERT_TRUE(rec.contains("eps_sweep"));
  EXPECT_EQ(rec["eps_sweep"]["entries"].size(), 3u);
}

TEST(Cli, TailCsvGrid) {
  const auto r = jdx_run({"tail", "--model", pure_file(), "--x", "0,0.5", "--y", "1,2", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0].rfind("x,y,eps,", 0), 0u);
  EXPECT_EQ(lines[1].rfind("0,1,", 0), 0u);
  EXPECT_EQ(lines[4].rfind("0.5,2,", 0), 0u);
}

TEST(Cli, DensityLeadingIsH) {
  const oracle::TemperedStable ts;
  const auto r = jdx_run({"density", "--model", pure_file(), "--y", "1", "--check-dy"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  const auto& rec = j.is_array() ? j[0] : j;
  EXPECT_NEAR(rec["a1"].get<double>(), ts.h(1.0), 1e-14);
  EXPECT_TRUE(rec["check_dy"]["pass"].get<bool>());
}

TEST(Cli, ValidateNeedsFourTimes) {
  EXPECT_EQ(jdx_run({"validate", "--model", pure_file(), "--t-grid", "0.1"}).code, 2);
}

TEST(Cli, ValidateDeterministic) {
  const std::vector<std::string> args = {"validate", "--model", pure_file(), "--n-samples", "20000", "--y", "0.5",
                                         "--seed", "77", "--n-steps", "8"};
  const auto a = jdx_run(args), b = jdx_run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed=77"), std::string::npos);
}

TEST(Cli, PriceRejectsInTheMoney) {
  const auto p = write_file("jdx_px.json", R"j({"preset": "exp-levy-pricing"})j");
  EXPECT_EQ(jdx_run({"price", "--model", p, "--spot", "1", "--strike", "0.9"}).code, 2);
  const auto r = jdx_run({"price", "--model", p, "--spot", "1", "--strike", "1.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(json::parse(r.out)["leading_term"].get<double>(), 0.0);
}

TEST(Cli, FormatDouble) {
  EXPECT_EQ(jdx::cli::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(jdx::cli::format_double(2.0), "2");
}
