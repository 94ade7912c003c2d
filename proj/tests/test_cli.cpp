#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "subgauss/cli.hpp"

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "subgauss");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = subgauss::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(Cli, EvalAtZeroUsesLimit) {
  const CliRun r = run({"eval", "--p", "0.25", "--t", "0", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["g"].get<double>(), 0.09375);
  EXPECT_EQ(j["kind"], "scalar");
}

TEST(Cli, EvalAtTStarHasFlatG) {
  const CliRun r = run({"eval", "--p1", "0.4", "--p2", "0.2", "--t", "1.791759469", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["g1"].get<double>(), 0.0, 1e-9);
  EXPECT_NEAR(j["t_star"].get<double>(), std::log(6.0), 1e-15);
}

TEST(Cli, EvalDegenerate) {
  const CliRun r = run({"eval", "--p", "1", "--t", "3", "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["g"].get<double>(), 0.0);
  EXPECT_TRUE(j["degenerate"].get<bool>());
}

TEST(Cli, BoundExamples) {
  auto j = nlohmann::json::parse(run({"bound", "--p", "0.5", "--json"}).out);
  EXPECT_EQ(j["constant"].get<double>(), 0.125);
  EXPECT_EQ(j["t_star"].get<double>(), 0.0);
  EXPECT_TRUE(j["limit_case"].get<bool>());
  j = nlohmann::json::parse(run({"bound", "--p1", "0.4", "--p2", "0.2", "--json"}).out);
  EXPECT_NEAR(j["constant"].get<double>(), 0.4 / std::log(6.0), 1e-15);
  EXPECT_NEAR(j["t_star"].get<double>(), 1.791759469, 1e-9);
  j = nlohmann::json::parse(run({"bound", "--p1", "0.6", "--p2", "0.4", "--json"}).out);
  EXPECT_NEAR(j["constant"].get<double>(), 0.24, 1e-15);
}

TEST(Cli, ClassifyExamples) {
  auto j = nlohmann::json::parse(run({"classify", "--p1", "0.3", "--p2", "0.1"}).out);
  for (const char* k : {"in_A", "in_B", "in_C", "in_D"}) EXPECT_EQ(j[k], "inside") << k;
  j = nlohmann::json::parse(run({"classify", "--p1", "0.7", "--p2", "0.05"}).out);
  EXPECT_EQ(j["in_B"], "outside");
  EXPECT_EQ(j["in_C"], "outside");
  EXPECT_EQ(j["in_D"], "outside");
  j = nlohmann::json::parse(run({"classify", "--p1", "0.8", "--p2", "0.7"}).out);
  EXPECT_NEAR(j["canonical_p1"].get<double>(), 0.3, 1e-15);
  EXPECT_NEAR(j["canonical_p2"].get<double>(), 0.2, 1e-15);
  EXPECT_TRUE(j["flipped"].get<bool>());
  j = nlohmann::json::parse(run({"classify", "--p1", "0.4", "--p2", "0.03"}).out);
  EXPECT_TRUE(j.contains("gamma"));
}

TEST(Cli, TraceBetaIncludesParametrisedPoint) {
  const auto dir = std::filesystem::temp_directory_path() / "subgauss_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "beta.csv";
  const CliRun r = run({"trace", "--curve", "beta", "--n", "3", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.rfind("p1,p2,residual,status\n", 0), 0u);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  // middle point of [0.01, p+ - 1e-4] is close to the tau = 2 point of the curve
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 3);
  // the row nearest p1 = 0.606132 lies on the tau = 2 point of the curve
  const CliRun fine = run({"trace", "--curve", "beta", "--n", "1001"});
  ASSERT_EQ(fine.code, 0);
  std::istringstream fs(fine.out);
  std::getline(fs, line);
  double best_p1 = 0.0;
  double best_p2 = 0.0;
  while (std::getline(fs, line)) {
    const auto c1 = line.find(',');
    const double p1 = std::stod(line.substr(0, c1));
    if (std::abs(p1 - 0.606132) < std::abs(best_p1 - 0.606132)) {
      best_p1 = p1;
      best_p2 = std::stod(line.substr(c1 + 1));
    }
  }
  EXPECT_NEAR(best_p1, 0.606132, 4e-4);
  EXPECT_NEAR(best_p2, 0.080832, 2e-4);
}

TEST(Cli, TraceAlphaAndDLower) {
  const CliRun a = run({"trace", "--curve", "alpha", "--n", "256"});
  ASSERT_EQ(a.code, 0);
  std::istringstream is(a.out);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    const double p1 = std::stod(line.substr(0, line.find(',')));
    const auto c1 = line.find(',');
    const double p2 = std::stod(line.substr(c1 + 1, line.find(',', c1 + 1) - c1 - 1));
    if (p1 <= 0.5) EXPECT_EQ(p2, 0.0) << line;
  }
  const CliRun d = run({"trace", "--curve", "d-lower", "--n", "256"});
  ASSERT_EQ(d.code, 0);
  std::istringstream ds(d.out);
  std::getline(ds, line);
  while (std::getline(ds, line)) {
    const double res = std::stod(line.substr(line.rfind(',', line.rfind(',') - 1) + 1));
    EXPECT_LE(res, 1e-10) << line;
  }
}

TEST(Cli, TraceIsDeterministic) {
  const CliRun a = run({"trace", "--curve", "gamma", "--n", "12"});
  const CliRun b = run({"trace", "--curve", "gamma", "--n", "12"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, VerifySuites) {
  const CliRun core = run({"verify", "--suite", "core"});
  EXPECT_EQ(core.code, 0) << core.out;
  const CliRun paper = run({"verify", "--suite", "paper"});
  EXPECT_EQ(paper.code, 0);
  EXPECT_NE(paper.out.find("discrepant: (i)"), std::string::npos);
  EXPECT_NE(paper.out.find("discrepant: (ii)"), std::string::npos);
  const CliRun again = run({"verify", "--suite", "paper"});
  EXPECT_EQ(paper.out, again.out);
  const CliRun regions = run({"verify", "--suite", "regions", "--grid", "30", "--seed", "7"});
  EXPECT_EQ(regions.code, 0) << regions.out;
  EXPECT_NE(regions.out.find("seed 7"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nonsense"}).code, 2);
  EXPECT_EQ(run({"eval", "--p", "0.3"}).code, 2);
  EXPECT_EQ(run({"eval", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--p", "1.5", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--p", "0.5", "--p1", "0.2", "--p2", "0.1", "--t", "1"}).code, 2);
  EXPECT_EQ(run({"eval", "--p", "0.5", "--t", "1", "--order", "5"}).code, 2);
  EXPECT_EQ(run({"trace", "--curve", "delta"}).code, 2);
  EXPECT_EQ(run({"trace", "--curve", "beta", "--n", "1"}).code, 2);
  EXPECT_EQ(run({"verify", "--suite", "bogus"}).code, 2);
  EXPECT_EQ(run({"classify", "--p1", "0.3"}).code, 2);
  EXPECT_EQ(run({"eval", "--help"}).code, 0);
}
