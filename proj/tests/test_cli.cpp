#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "optonet/cli.hpp"

using namespace optonet;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
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

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("optonet_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, SolveReportsPeakEntanglement) {
  const auto r = run({"solve"});
  ASSERT_EQ(r.code, exit_code::ok) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["stability"]["verdict"], "stable");
  EXPECT_EQ(j["covariance"].size(), 8u);
  EXPECT_NEAR(j["entanglement"][0]["log_neg"].get<double>(), 0.1, 0.03);
}

TEST(Cli, UnstableSolveHasDistinctExitAndNoCovariance) {
  const auto r = run({"solve", "--set", "delta_c=-1", "--set", "g1=0.6"});
  EXPECT_EQ(r.code, exit_code::unstable);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.contains("covariance"));
  EXPECT_EQ(j["stability"]["spectrum"].size(), 8u);
}

TEST(Cli, JsonReportRoundTrips) {
  const auto dir = scratch("roundtrip");
  const auto first = dir / "first.json";
  ASSERT_EQ(run({"solve", "--set", "kappa=0.137", "--set", "nbar2=3.3", "--out", first.string()}).code, 0);
  const auto again = run({"solve", "--config", first.string()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(again.out, slurp(first));
}

TEST(Cli, CsvSolve) {
  const auto r = run({"solve", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("kind,name,value\n", 0), 0u);
  EXPECT_NE(r.out.find("log_neg,a_b1,"), std::string::npos);
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
}

TEST(Cli, ConfigErrorsExitWithUsageCode) {
  auto r = run({"solve", "--set", "gs_1=0.1"});
  EXPECT_EQ(r.code, exit_code::usage);
  EXPECT_NE(r.err.find("gs_1"), std::string::npos);
  r = run({"solve", "--set", "kappa=0.1", "--set", "kappa=0.2"});
  EXPECT_EQ(r.code, exit_code::usage);
  r = run({"solve", "--frobnicate"});
  EXPECT_EQ(r.code, exit_code::usage);
  r = run({});
  EXPECT_EQ(r.code, exit_code::usage);
  r = run({"solve", "--tol-residual", "-1"});
  EXPECT_EQ(r.code, exit_code::usage);
}

TEST(Cli, ConfigFileErrorNamesPosition) {
  const auto dir = scratch("cfgerr");
  const auto cfg = dir / "bad.cfg";
  std::ofstream(cfg) << "# test\nkappa = 0.1\nkappa_s = -2\n";
  const auto r = run({"solve", "--config", cfg.string()});
  EXPECT_EQ(r.code, exit_code::usage);
  EXPECT_NE(r.err.find("bad.cfg:3:"), std::string::npos) << r.err;
}

TEST(Cli, DarkModeExitCodes) {
  const auto net = std::vector<std::string>{"--set", "j_hop=0.05", "--set", "eta_hop=0.05", "--set", "gs2=0.1"};
  auto args = std::vector<std::string>{"darkmode", "--switch-off", "eta"};
  args.insert(args.end(), net.begin(), net.end());
  auto r = run(args);
  EXPECT_EQ(r.code, exit_code::dark_mode) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out)["dark_mode"]["dark_mode_exists"].get<bool>());

  args = {"darkmode", "--set", "gs2=0.2"};
  args.insert(args.end(), net.begin(), net.begin() + 4);
  r = run(args);
  EXPECT_EQ(r.code, exit_code::ok) << r.err;

  r = run({"darkmode", "--set", "g1=0", "--set", "g2=0"});
  EXPECT_EQ(r.code, exit_code::degenerate);
}

TEST(Cli, DarkModeTaxonomyTable) {
  const auto r = run({"darkmode", "--taxonomy", "--set", "j_hop=0.05", "--set", "eta_hop=0.05", "--set", "gs2=0.1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["taxonomy"].size(), 14u);
  EXPECT_TRUE(j["taxonomy"]["eta=0"]["dark_mode_exists"].get<bool>());
  EXPECT_FALSE(j["taxonomy"]["Gs1=0"]["dark_mode_exists"].get<bool>());
}

TEST(Cli, SweepWritesCsvAndManifest) {
  const auto dir = scratch("sweep");
  const auto out = dir / "ds.csv";
  const auto r = run({"sweep", "--axis", "delta_s=linear:0.5:1.5:11", "--outputs", "en_a_b1,stable", "--workers", "3",
                      "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(out);
  EXPECT_EQ(csv.rfind("delta_s,en_a_b1,stable,status,message\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  const auto m = nlohmann::json::parse(slurp(dir / "ds.csv.manifest.json"));
  EXPECT_EQ(m["grid_shape"][0], 11);
  EXPECT_EQ(m["data_file"], "ds.csv");
}

TEST(Cli, SweepLinkedAndRatioAxes) {
  auto r = run({"sweep", "--axis", "nbar1+nbar2=log10:0.01:100:3", "--outputs", "en_a_b1"});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"sweep", "--set", "gs2=0.1", "--axis", "gs2/gs1=list:0.5,1,1.5", "--outputs", "m2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["records"][1]["values"]["m2"].get<double>(), 0.0, 1e-15);
  r = run({"sweep", "--axis", "delta_z=linear:0:1:3"});
  EXPECT_EQ(r.code, exit_code::usage);
  r = run({"sweep", "--axis", "kappa=cubic:0:1:3"});
  EXPECT_EQ(r.code, exit_code::usage);
}

TEST(Cli, FigureFilesAreStableAcrossReruns) {
  const auto dir = scratch("fig");
  ASSERT_EQ(run({"figure", "fig4a", "--out-dir", dir.string()}).code, 0);
  ASSERT_TRUE(fs::exists(dir / "fig4a__gs1_0.csv"));
  ASSERT_TRUE(fs::exists(dir / "fig4a__gs1_0.1.csv"));
  ASSERT_TRUE(fs::exists(dir / "fig4a__gs1_0.1.json"));
  const std::string first = slurp(dir / "fig4a__gs1_0.1.csv") + slurp(dir / "fig4a__gs1_0.1.json");
  ASSERT_EQ(run({"figure", "fig4a", "--out-dir", dir.string(), "--workers", "1"}).code, 0);
  EXPECT_EQ(first, slurp(dir / "fig4a__gs1_0.1.csv") + slurp(dir / "fig4a__gs1_0.1.json"));
}

TEST(Cli, FigureSixCaseWritesSixFiles) {
  const auto dir = scratch("fig6c");
  ASSERT_EQ(run({"figure", "fig6c", "--out-dir", dir.string()}).code, 0);
  int csvs = 0;
  for (const auto& e : fs::directory_iterator(dir)) csvs += e.path().extension() == ".csv";
  EXPECT_EQ(csvs, 6);
}

TEST(Cli, FigureListingAndUnknownName) {
  auto r = run({"figure", "--list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("fig11b"), std::string::npos);
  r = run({"figure", "fig99"});
  EXPECT_EQ(r.code, exit_code::usage);
  EXPECT_NE(r.err.find("fig2a"), std::string::npos);
}

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto v = run({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find(kArtifactVersion), std::string::npos);
}
