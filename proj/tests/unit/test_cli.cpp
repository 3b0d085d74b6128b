#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace heckebench::cli;
using json = nlohmann::json;

namespace {

std::filesystem::path out_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("heckebench_cli_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

int run_args(std::vector<std::string> args) {
  std::vector<char*> argv;
  args.insert(args.begin(), "heckebench");
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST(Cli, KloostermanPrintsMinusOne) {
  const auto out = out_file("kl.json");
  EXPECT_EQ(run_args({"kloosterman", "--n", "1", "--m", "1", "--c", "6", "--out", out.string()}), kExitPass);
  const auto j = json::parse(slurp(out));
  EXPECT_EQ(j["schema"], kSchema);
  EXPECT_NEAR(j["rows"][0]["value"].get<double>(), -1.0, 1e-12);
  EXPECT_NEAR(j["rows"][0]["weil_bound"].get<double>(), 2.0 * 2.0 * std::sqrt(6.0), 1e-12);
  EXPECT_TRUE(j["meta"].contains("timestamp"));
}

TEST(Cli, PeterssonVerify) {
  const auto out = out_file("pet.json");
  EXPECT_EQ(run_args({"petersson-verify", "--k", "12", "--nmax", "5", "--cmax", "100", "--no-timestamp", "--out",
                      out.string()}),
            kExitPass);
  const auto j = json::parse(slurp(out));
  EXPECT_LT(j["extra"]["max_defect"].get<double>(), 1e-8);
  EXPECT_EQ(j["rows"].size(), 25u);
  EXPECT_FALSE(j["meta"].contains("timestamp"));
  EXPECT_TRUE(j["summary"]["passed"].get<bool>());
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_args({"no-such-command"}), kExitConfig);
  EXPECT_EQ(run_args({}), kExitConfig);
  EXPECT_EQ(run_args({"forms", "--k", "13"}), kExitConfig);
  EXPECT_EQ(run_args({"bessel", "--l", "1", "--x", "-2"}), kExitConfig);
  EXPECT_EQ(run_args({"watson-verify", "--tol", "0"}), kExitConfig);
  EXPECT_EQ(run_args({"forms", "--format", "xml"}), kExitConfig);
  EXPECT_EQ(run_args({"forms", "--cache-dir", "/proc/heckebench/forbidden"}), kExitConfig);
  EXPECT_EQ(run_args({"--help"}), kExitPass);
}

TEST(Cli, AssertionFailureExitsOne) {
  RunConfig c;
  c.command = "lvalue";
  c.weights = {24};
  c.sym2_method = "trace_inversion";
  c.out = out_file("fail.json").string();
  std::ostringstream err;
  EXPECT_EQ(run(c, err), kExitConfig);  // trace inversion on a two-dimensional space is a domain error
  Report r;
  r.check("always_fails", false, 1.0, 0.0);
  EXPECT_FALSE(r.passed());
}

TEST(Cli, CsvAndText) {
  const auto csv = out_file("forms.csv");
  EXPECT_EQ(run_args({"forms", "--k", "24", "--format", "csv", "--out", csv.string()}), kExitPass);
  std::istringstream s(slurp(csv));
  std::string header, row;
  std::getline(s, header);
  std::getline(s, row);
  EXPECT_EQ(header.rfind("k,index,N", 0), 0u);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));
  const auto txt = out_file("bessel.txt");
  EXPECT_EQ(run_args({"bessel", "--l", "1", "--x", "2", "--format", "text", "--out", txt.string()}), kExitPass);
  EXPECT_NE(slurp(txt).find("value=0.5767248077568"), std::string::npos);
}

TEST(Cli, Idempotent) {
  const auto a = out_file("va_a.json"), b = out_file("va_b.json");
  for (const auto& p : {a, b})
    ASSERT_EQ(run_args({"verify-all", "--max-weight", "16", "--no-timestamp", "--out", p.string()}), kExitPass);
  EXPECT_EQ(slurp(a), slurp(b));
}
