#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hog_cli.hpp"
#include "test_util.hpp"

namespace hog {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "hog");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hog_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(Cli, CheckEqPureAndMixed) {
  const std::string mp = testing::game_path("matching_pennies.json");
  EXPECT_EQ(run_cli({"check-eq", mp, "--profile", R"(["H","H"])"}).code, 3);
  EXPECT_EQ(run_cli({"check-eq", mp, "--profile", "[[0.5,0.5],[0.5,0.5]]"}).code, 0);
  EXPECT_EQ(run_cli({"check-eq", testing::game_path("prisoners_dilemma.json"),
                     "--profile", "[1,1]"})
                .code,
            0);
}

TEST(Cli, CheckEqSequentialStrategy) {
  const std::string g = testing::game_path("two_x_plus_y.json");
  const Result ok = run_cli({"check-eq", g, "--strategy", "[[1],[1,1]]", "--json"});
  EXPECT_EQ(ok.code, 0);
  const json report = json::parse(ok.out);
  EXPECT_TRUE(report.at("normal_form_nash").get<bool>());
  EXPECT_EQ(run_cli({"check-eq", g, "--strategy", "[[1],[0,1]]"}).code, 3);
}

TEST(Cli, MalformedGameExitsTwo) {
  const auto dir = scratch_dir("malformed");
  const auto path = (dir / "bad.json").string();
  std::ofstream(path) << R"({"version": 1, "kind": "simultaneous",
    "players": [{"name": "a", "moves": 2, "quantifier": {"kind": "max"}}],
    "payoffs": [[1, 2, 3]]})";
  const Result r = run_cli({"solve", path, "--mode", "pure"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/payoffs/0"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"solve", (dir / "missing.json").string(), "--mode", "pure"}).code, 2);
  EXPECT_EQ(run_cli({"solve", testing::game_path("matching_pennies.json"), "--mode",
                     "sideways"})
                .code,
            2);
}

TEST(Cli, SolveMixedMatchingPennies) {
  const Result r = run_cli(
      {"solve", testing::game_path("matching_pennies.json"), "--mode", "mixed", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(r.out);
  ASSERT_EQ(report.at("equilibria").size(), 1u);
}

TEST(Cli, SolveSeq) {
  const Result r = run_cli(
      {"solve", testing::game_path("two_x_plus_y.json"), "--mode", "seq", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(r.out);
  EXPECT_EQ(report.at("optimal_play"), json::parse("[1, 1]"));
  EXPECT_EQ(report.at("outcome"), json::parse("3.0"));
}

TEST(Cli, NormalFormExport) {
  const auto dir = scratch_dir("nf");
  const auto path = (dir / "nf.json").string();
  const Result r = run_cli(
      {"normal-form", testing::game_path("three_rounds.json"), "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const GameFile nf = load_game_file(path);
  EXPECT_EQ(nf.move_counts(), (std::vector<std::size_t>{2, 4, 16}));
}

TEST(Cli, BbcReport) {
  const Result r = run_cli(
      {"bbc", testing::game_path("stage_matching_pennies.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json report = json::parse(r.out);
  EXPECT_TRUE(report.at("psi_phi_profile").get<bool>());
}

TEST(Cli, BudgetPrecedence) {
  const std::string g = testing::game_path("three_rounds.json");
  EXPECT_EQ(run_cli({"normal-form", g, "--budget", "10"}).code, 4);
  ::setenv("HOG_BUDGET", "10", 1);
  EXPECT_EQ(run_cli({"normal-form", g}).code, 4);
  EXPECT_EQ(run_cli({"normal-form", g, "--budget", "1000"}).code, 0);
  ::unsetenv("HOG_BUDGET");
  EXPECT_EQ(run_cli({"normal-form", g}).code, 0);
}

TEST(Cli, FuzzSeed42) {
  const Result r = run_cli({"fuzz", "--seed", "42", "--count", "200", "--json"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(json::parse(r.out).at("passed"), 200);
  EXPECT_EQ(run_cli({"fuzz", "--seed", "42", "--count", "60", "--kind", "all",
                     "--max-moves", "2"})
                .code,
            0);
}

TEST(Cli, FuzzShapeOverBudget) {
  EXPECT_EQ(run_cli({"fuzz", "--kind", "soundness", "--max-rounds", "3",
                     "--max-moves", "3"})
                .code,
            4);
  EXPECT_EQ(run_cli({"fuzz", "--max-rounds", "20", "--max-moves", "3"}).code, 4);
}

TEST(Cli, FuzzInjectedFault) {
  const auto dir = scratch_dir("fuzz");
  const Result r = run_cli({"fuzz", "--seed", "42", "--count", "50", "--inject-fault",
                            "--out", dir.string(), "--json"});
  ASSERT_EQ(r.code, 6) << r.out << r.err;
  const json report = json::parse(r.out);
  const std::string file = report.at("minimized_game");
  EXPECT_TRUE(std::filesystem::exists(file));
  EXPECT_NO_THROW(load_game_file(file));
}

}  // namespace
}  // namespace hog
