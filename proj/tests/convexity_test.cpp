#include <gtest/gtest.h>

#include "convexity_oracle.hpp"
#include "graphopt/convexity.hpp"
#include "graphopt/exact.hpp"
#include "graphopt/grid.hpp"
#include "support.hpp"

using namespace graphopt;
using testing_support::path_graph;

namespace {

using Vec = std::vector<double>;

template <class Scalar>
std::vector<Scalar> negated(std::vector<Scalar> v) {
  for (auto& x : v) x = -x;
  return v;
}

}  // namespace

TEST(Convexity, ImprovementDelta) {
  auto g = path_graph(2);
  Vec f{0.3, 0.1};
  EXPECT_DOUBLE_EQ(improvement_delta<double>(g, f, 0, 1), 0.2);
  EXPECT_DOUBLE_EQ(improvement_delta<double>(g, f, 1, 0), -0.2);
  Vec same{0.4, 0.4};
  EXPECT_EQ(improvement_delta<double>(g, same, 0, 1), 0.0);
  auto g3 = path_graph(3);
  Vec f3{0.0, 0.1, 0.2};
  EXPECT_THROW(improvement_delta<double>(g3, f3, 0, 2), GraphError);
}

TEST(Convexity, BestImprovementOnLine) {
  auto g = path_graph(4);
  std::vector<Rational> f{Rational(0), Rational(3, 10), Rational(2, 10), Rational(5, 10)};
  EXPECT_EQ(best_improvement<Rational>(g, f, 2), Rational(-1, 10));
  EXPECT_EQ(best_improvement<Rational>(g, f, 1), Rational(3, 10));
  auto iso = Graph::from_adjacency({{}, {}}, false);
  Vec fi{0, 1};
  EXPECT_THROW(best_improvement<double>(iso, fi, 0), GraphError);
  Vec flat{0.5, 0.5, 0.5};
  EXPECT_EQ(best_improvement<double>(path_graph(3), flat, 1), 0.0);
}

TEST(Convexity, PathCheck) {
  auto g = path_graph(4);
  // Improvements 0.4, 0.2, 0.1 toward node 3.
  std::vector<Rational> f{Rational(7, 10), Rational(3, 10), Rational(1, 10), Rational(0)};
  Path p{{0, 1, 2, 3}};
  EXPECT_TRUE(is_strongly_convex_path<Rational>(g, f, p, Rational(1)));
  EXPECT_FALSE(is_strongly_convex_path<Rational>(g, f, p, Rational(3, 2)));
  EXPECT_TRUE(is_strongly_convex_path<Rational>(g, f, Path{{2, 3}}, Rational(100)));
  EXPECT_FALSE(is_strongly_convex_path<Rational>(g, f, Path{{3, 2}}, Rational(1)));
  EXPECT_THROW(is_strongly_convex_path<Rational>(g, f, Path{{0, 2}}, Rational(1)), GraphError);
  EXPECT_THROW(is_strongly_convex_path<Rational>(g, f, Path{{0}}, Rational(1)), std::invalid_argument);
  EXPECT_THROW(is_strongly_convex_path<Rational>(g, f, p, Rational(0)), std::invalid_argument);
}

TEST(Convexity, CertifiesThreeNodeLine) {
  std::vector<Rational> f{Rational(0), Rational(1, 10), Rational(3, 10)};
  auto cert = certify_strongly_convex<Rational>(path_graph(3), f, Rational(1));
  ASSERT_TRUE(cert.certified());
  EXPECT_EQ(*cert.first_step[0], Rational(0));
  EXPECT_EQ(*cert.first_step[1], Rational(1, 10));
  EXPECT_EQ(*cert.first_step[2], Rational(2, 10));
  EXPECT_EQ(cert.witness(2), (Path{{2, 1, 0}}));
}

TEST(Convexity, LocalMinimumFails) {
  std::vector<Rational> f{Rational(0), Rational(3, 10), Rational(2, 10), Rational(5, 10)};
  for (Rational m : {Rational(1, 100), Rational(1), Rational(50)}) {
    auto cert = certify_strongly_convex<Rational>(path_graph(4), f, m);
    EXPECT_FALSE(cert.certified());
    EXPECT_EQ(cert.uncertifiable, (std::vector<NodeId>{2, 3}));
  }
}

TEST(Convexity, ReportsTiedMinimizers) {
  Vec f{0.0, 0.5, 0.0};
  auto cert = certify_strongly_convex<double>(path_graph(3), f, 1.0);
  EXPECT_EQ(cert.minimizer, 0u);
  EXPECT_EQ(cert.tied_minimizers, (std::vector<NodeId>{2}));
  EXPECT_FALSE(cert.certified_at(2));
}

TEST(Convexity, PlainGridCertifiesExactlyAtTwoSeventeenths) {
  const Graph g = make_plain_grid_graph(10);
  auto f = negated(grid_values<Rational>(10));
  auto ok = certify_strongly_convex<Rational>(g, f, Rational(2, 17));
  EXPECT_TRUE(ok.certified()) << ok.uncertifiable.size() << " uncertified";
  EXPECT_EQ(ok.minimizer, grid_node(10, 0, 0));
  auto bad = certify_strongly_convex<Rational>(g, f, Rational(1, 5));
  EXPECT_FALSE(bad.certified());
}

TEST(Convexity, GridCertificateFromDecimalText) {
  // Reading the shortest decimal text exactly recovers the rational grid.
  std::vector<Rational> f;
  for (double v : grid_values<double>(10)) f.push_back(-parse_exact_or_throw(format_double(v)));
  EXPECT_TRUE(certify_strongly_convex<Rational>(make_plain_grid_graph(10), f, Rational(2, 17)).certified());
}

TEST(Convexity, WitnessesReplayAndGapBoundHolds) {
  const Graph g = make_plain_grid_graph(6);
  auto f = negated(grid_values<Rational>(6));
  const Rational m(2, 9);  // 2 / (2D - 3)
  auto cert = certify_strongly_convex<Rational>(g, f, m);
  ASSERT_TRUE(cert.certified());
  for (NodeId x = 0; x < g.size(); ++x) {
    if (x == cert.minimizer) continue;
    Path p = cert.witness(x);
    EXPECT_EQ(p.nodes.back(), cert.minimizer);
    EXPECT_TRUE(is_strongly_convex_path<Rational>(g, f, p, m));
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
      const NodeId u = p.nodes[i];
      EXPECT_LE(f[u] - f[cert.minimizer], descent_gap_bound<Rational>(m, f[u] - f[p.nodes[i + 1]]));
    }
  }
}

TEST(Convexity, DescentGapBound) {
  EXPECT_DOUBLE_EQ(descent_gap_bound(1.0, 0.1), 0.2);
  EXPECT_NEAR(descent_gap_bound(1e9, 0.1), 0.1, 1e-9);
  EXPECT_THROW(descent_gap_bound(0.0, 0.1), std::invalid_argument);
}

TEST(Convexity, MonotoneInM) {
  Rng rng = make_rng({77});
  for (int trial = 0; trial < 30; ++trial) {
    auto g = testing_support::random_connected_graph(9, 0.3, rng);
    std::vector<Rational> f;
    for (NodeId i = 0; i < 9; ++i) f.emplace_back(static_cast<long long>(uniform_index(rng, 30)));
    auto loose = certify_strongly_convex<Rational>(g, f, Rational(1, 10));
    auto tight = certify_strongly_convex<Rational>(g, f, Rational(2));
    for (NodeId x = 0; x < 9; ++x)
      if (tight.certified_at(x)) {
        EXPECT_TRUE(loose.certified_at(x));
      }
  }
}

TEST(Convexity, AgreesWithExhaustiveSearch) {
  Rng rng = make_rng({2025});
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + uniform_index(rng, 8);
    auto g = testing_support::random_connected_graph(n, 0.35, rng);
    std::vector<Rational> f;
    for (NodeId i = 0; i < n; ++i) f.emplace_back(static_cast<long long>(uniform_index(rng, 40)));
    for (Rational m : {Rational(1, 10), Rational(1, 2), Rational(1), Rational(2)}) {
      auto cert = certify_strongly_convex<Rational>(g, f, m);
      testing_support::BruteForceConvexity<Rational> brute{g, f, m, testing_support::first_minimizer(f), {}};
      for (NodeId x = 0; x < n; ++x) EXPECT_EQ(cert.first_step[x], brute.min_first_step(x)) << "node " << x;
    }
  }
}

TEST(NearConvexity, LineExample) {
  std::vector<Rational> f{Rational(0), Rational(3, 10), Rational(2, 10), Rational(5, 10)};
  auto g = path_graph(4);
  auto rep = certify_nearly_convex<Rational>(g, f, Rational(1, 2), Rational(1, 10));
  EXPECT_FALSE(rep.in_core[2]);
  EXPECT_TRUE(rep.in_core[0]);
  EXPECT_TRUE(rep.in_core[1]);
  EXPECT_TRUE(rep.in_core[3]);
  ASSERT_TRUE(rep.feasible());
  EXPECT_EQ(rep.radius, 1u);
  EXPECT_EQ(*rep.hops[2], 1u);
  EXPECT_EQ(rep.witness[2], (Path{{2, 1}}));
  EXPECT_TRUE(verify_low_energy_witness<Rational>(g, f, rep, 2));

  auto tight = certify_nearly_convex<Rational>(g, f, Rational(1, 2), Rational(1, 20));
  EXPECT_FALSE(tight.feasible());
  EXPECT_EQ(tight.infeasible, (std::vector<NodeId>{2}));
}

TEST(NearConvexity, MinimizerAlwaysInCore) {
  Vec f{0.0, 1.0};
  auto rep = certify_nearly_convex<double>(path_graph(2), f, 0.5, 0.0);
  EXPECT_TRUE(rep.in_core[0]);
  EXPECT_THROW(certify_nearly_convex<double>(path_graph(2), f, 0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(certify_nearly_convex<double>(path_graph(2), f, 0.5, -1.0), std::invalid_argument);
}

TEST(NearConvexity, StrongConvexityImpliesFullCore) {
  const Graph g = make_plain_grid_graph(10);
  auto f = negated(grid_values<Rational>(10));
  const Rational m(2, 17);
  ASSERT_TRUE(certify_strongly_convex<Rational>(g, f, m).certified());
  auto rep = certify_nearly_convex<Rational>(g, f, near_convexity_alpha(m), Rational(0));
  EXPECT_TRUE(rep.feasible());
  EXPECT_EQ(rep.radius, 0u);
  EXPECT_EQ(std::count(rep.in_core.begin(), rep.in_core.end(), true), 441);
}

TEST(NearConvexity, LargerCapNeverIncreasesRadius) {
  Rng rng = make_rng({5});
  auto base = make_plain_grid_graph(5);
  auto clean = negated(grid_values<double>(5));
  for (int trial = 0; trial < 20; ++trial) {
    Vec f = clean;
    for (auto& v : f) v += 0.05 * (uniform01(rng) - 0.5);
    std::optional<std::size_t> last;
    for (double c : {0.0, 0.01, 0.02, 0.05, 0.1, 1.0}) {
      auto rep = certify_nearly_convex<double>(base, f, 0.3, c);
      if (!rep.feasible()) {
        EXPECT_FALSE(last) << "feasibility lost when c grew";
        continue;
      }
      if (last) {
        EXPECT_LE(rep.radius, *last);
      }
      last = rep.radius;
      for (NodeId x = 0; x < base.size(); ++x) EXPECT_TRUE(verify_low_energy_witness<double>(base, f, rep, x));
    }
  }
}
