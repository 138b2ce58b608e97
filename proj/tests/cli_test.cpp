#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int status;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "graphopt");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int status = graphopt::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("graphopt_cli_" + name)).string();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, SrBound) {
  auto r = call({"bound", "sr", "--K", "2", "--H", "50", "--B", "100"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NEAR(std::stod(r.out), 0.141, 5e-4);
}

TEST(Cli, OtherBounds) {
  EXPECT_EQ(call({"bound", "sample-size", "--r", "2", "--gamma", "10", "--R", "0.5"}).out, "100\n");
  EXPECT_NEAR(std::stod(call({"bound", "ed", "--d", "15", "--T", "10000", "--gaps", "0.2"}).out), 8.3e-3, 1e-4);
  EXPECT_NEAR(std::stod(call({"bound", "hardness", "--gaps", "0.1,0.5"}).out), 200, 1e-9);
  EXPECT_EQ(call({"bound", "gap", "--m", "1", "--delta", "0.1"}).out, "0.2\n");
  EXPECT_EQ(call({"bound", "sr-loose", "--n", "441", "--gap", "0.05", "--B", "200"}).out, "1\n");
  auto c = lines(call({"bound", "sa-convex", "--alpha", "0.5", "--d", "15", "--eps", "0.001", "--gap0", "0.8"}).out);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[1].substr(c[1].find(',') + 1), "97");
  auto n = lines(call({"bound", "sa-nearly", "--alpha", "0.3", "--c", "1", "--r", "1", "--d", "15", "--F", "1"}).out);
  EXPECT_EQ(n[0], "gamma,beta,min_rounds,final_bound");
}

TEST(Cli, GenGridThenCertify) {
  const auto g = tmp("g2.txt"), v = tmp("g2.csv");
  ASSERT_EQ(call({"gen-grid", "--D", "2", "--plain", "--out", g, "--values", v}).status, 0);
  auto r = call({"certify", "--graph", g, "--values", v, "--m", "0.1", "--sense", "max", "--exact"});
  EXPECT_EQ(r.status, 0);
  auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 26u);
  EXPECT_EQ(rows[0], "node,M(x)");
  EXPECT_EQ(rows[13], "12,0");
  EXPECT_NE(r.err.find("yes"), std::string::npos);

  auto near = call({"certify", "--graph", g, "--values", v, "--alpha", "0.3", "--c", "0", "--sense", "max"});
  EXPECT_EQ(lines(near.out)[0], "node,in_C,r(x)");
  EXPECT_EQ(lines(near.out).size(), 26u);
}

TEST(Cli, CertifyPlainGridD10) {
  const auto g = tmp("g10.txt"), v = tmp("g10.csv");
  ASSERT_EQ(call({"gen-grid", "--D", "10", "--plain", "--out", g, "--values", v}).status, 0);
  auto ok = call({"certify", "--graph", g, "--values", v, "--m", "2/17", "--sense", "max", "--exact"});
  EXPECT_NE(ok.err.find(": yes (441/441"), std::string::npos) << ok.err;
  auto bad = call({"certify", "--graph", g, "--values", v, "--m", "0.2", "--sense", "max", "--exact"});
  EXPECT_NE(bad.err.find(": no"), std::string::npos) << bad.err;
}

TEST(Cli, SeedIsMandatory) {
  auto r = call({"run", "--grid", "3", "--budget", "100"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("seed"), std::string::npos);
  EXPECT_NE(call({"gen-grid", "--D", "3"}).status, 0);
  EXPECT_NE(call({"gen-points", "--n", "10"}).status, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(call({"run", "--grid", "3", "--budget", "100", "--seed", "1", "--bogus"}).status, 0);
  EXPECT_NE(call({}).status, 0);
  EXPECT_NE(call({"bound"}).status, 0);
  EXPECT_NE(call({"certify", "--graph", "x", "--values", "y"}).status, 0);
}

TEST(Cli, RunIsDeterministic) {
  std::vector<std::string> args{"run", "--grid", "10", "--algo", "ed", "--budgets", "200,400", "--trials", "5",
                                "--seed", "7", "--sense", "max", "--no-time"};
  auto a = call(args), b = call(args);
  EXPECT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto rows = lines(a.out);
  ASSERT_EQ(rows.size(), 11u);
  EXPECT_EQ(rows[0], "trial,algo,budget,node,gap,samples,time_ms");
  auto summary = call({"run", "--grid", "10", "--algo", "sa", "--budget", "200", "--trials", "5", "--seed", "7",
                       "--sense", "max", "--summary"});
  EXPECT_EQ(lines(summary.out).size(), 2u);
}

TEST(Cli, PointsKnnAndNearestNeighbors) {
  const auto p = tmp("pts.csv"), q = tmp("q.csv"), g = tmp("knn.txt");
  ASSERT_EQ(call({"gen-points", "--n", "300", "--dim", "4", "--seed", "1", "--out", p}).status, 0);
  ASSERT_EQ(call({"gen-points", "--n", "8", "--dim", "4", "--seed", "2", "--out", q}).status, 0);
  ASSERT_EQ(call({"gen-knn", "--points", p, "--labeled", "--N", "8", "--out", g}).status, 0);
  auto r = call({"nn", "--points", p, "--queries", q, "--queries-labeled", "--graph", g, "--K", "5", "--seed", "3"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0], "query_id,algo,predicted_label,recall_at_K,distance_evals,time_ms");
  auto e = call({"nn", "--points", p, "--queries", q, "--queries-labeled", "--algo", "exact", "--K", "5"});
  ASSERT_EQ(e.status, 0) << e.err;
  EXPECT_EQ(lines(e.out)[1].substr(0, 8), "0,exact,");
  EXPECT_NE(call({"nn", "--points", p, "--queries", q, "--queries-labeled"}).status, 0);
}
