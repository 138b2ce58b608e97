#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "graphopt/exact.hpp"
#include "graphopt/graph_io.hpp"
#include "graphopt/grid.hpp"
#include "graphopt/points.hpp"

using namespace graphopt;

namespace {

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_graph(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("graphopt_io_" + name);
}

}  // namespace

TEST(GraphIo, RoundTripGridWithValues) {
  auto inst = make_grid_graph(GridSpec{2, 8, 3});
  auto gp = temp_file("grid.txt"), vp = temp_file("grid.csv");
  save_graph(inst.graph, gp, &inst.values, vp);
  auto [g, v] = load_graph(gp, vp);
  EXPECT_EQ(g, inst.graph);
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, inst.values);
  std::filesystem::remove(gp);
  std::filesystem::remove(vp);
}

TEST(GraphIo, DirectedRoundTrip) {
  auto g = make_knn_graph(make_two_gaussian_cloud(20, 2, 1.0, 0), 3);
  std::stringstream s;
  write_graph(s, g);
  EXPECT_EQ(read_graph(s), g);
}

TEST(GraphIo, HeaderFormat) {
  std::ostringstream s;
  write_graph(s, Graph::from_edges(3, false, std::vector<std::pair<NodeId, NodeId>>{{2, 0}, {0, 1}}));
  EXPECT_EQ(s.str(), "n 3 directed 0\n0 1\n0 2\n");
}

TEST(GraphIo, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("n 6 directed 0\n0 1\n5 5\n"), 3u);
  EXPECT_EQ(error_line("n 3 directed 0\n0 7\n"), 2u);
  EXPECT_EQ(error_line("n 3 directed 0\n0 1\n1 0\n"), 3u);
  EXPECT_EQ(error_line("n 3 directed 1\n0 1\n0 1\n"), 3u);
  EXPECT_EQ(error_line("n 3 directed 1\n0 1\n1 0\n"), 0u);
  EXPECT_EQ(error_line("nodes 3\n"), 1u);
  EXPECT_EQ(error_line("n 3 directed 2\n"), 1u);
  EXPECT_EQ(error_line("n 3 directed 0\n0 1 2\n"), 2u);
  EXPECT_EQ(error_line(""), 1u);
}

TEST(GraphIo, MessagesNameTheProblem) {
  std::istringstream in("n 6 directed 0\n5 5\n");
  try {
    read_graph(in);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("self-loop"), std::string::npos);
  }
}

TEST(ValuesIo, RequiresAscendingNodes) {
  std::istringstream ok("0,0.5\n1,0.25\n");
  EXPECT_EQ(read_values(ok).means()[1], 0.25);
  std::istringstream gap("0,0.5\n2,0.25\n");
  EXPECT_THROW(read_values(gap), ParseError);
  std::istringstream bad("0,abc\n");
  EXPECT_THROW(read_values(bad), ParseError);
  std::istringstream short_file("0,0.5\n");
  EXPECT_THROW(read_values(short_file, 2), ParseError);
}

TEST(ValuesIo, ShortestRoundTripFormatting) {
  EXPECT_EQ(format_double(0.7), "0.7");
  EXPECT_EQ(format_double(0.1 + 0.2), "0.30000000000000004");
  auto v = grid_values(10);
  std::stringstream s;
  write_values(s, ValueTable(v));
  EXPECT_EQ(read_values(s).means()[grid_node(10, 3, 4)], v[grid_node(10, 3, 4)]);
}

TEST(PointsIo, LabeledRoundTrip) {
  auto pts = make_two_gaussian_cloud(15, 3, 2.0, 9);
  std::stringstream s;
  write_points(s, pts);
  EXPECT_EQ(read_points(s, true), pts);
}

TEST(PointsIo, RejectsRaggedRows) {
  std::istringstream in("1,2\n3\n");
  EXPECT_THROW(read_points(in, false), ParseError);
}

TEST(Exact, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_exact_or_throw("0.7"), Rational(7, 10));
  EXPECT_EQ(parse_exact_or_throw("-1.25e-2"), Rational(-1, 80));
  EXPECT_EQ(parse_exact_or_throw("2/17"), Rational(2, 17));
  EXPECT_EQ(parse_exact_or_throw("3E+2"), Rational(300));
  EXPECT_FALSE(parse_exact("1.2.3"));
  EXPECT_FALSE(parse_exact("1/0"));
  EXPECT_FALSE(parse_exact(""));
  EXPECT_FALSE(parse_exact("e5"));
}

TEST(Exact, GridValuesMatchTheirText) {
  // Rational grid values equal the exact reading of the shortest decimal text.
  auto exact = grid_values<Rational>(10);
  auto approx = grid_values<double>(10);
  for (NodeId x = 0; x < exact.size(); ++x) {
    EXPECT_EQ(parse_exact_or_throw(format_double(approx[x])), exact[x]) << x;
  }
}
