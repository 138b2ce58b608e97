#pragma once

// Text formats:
//   graph:  "n <n> directed <0|1>" then one "u v" pair per line, ascending.
//           Undirected graphs list each edge once with u < v.
//   values: one "node,value" per line, nodes 0..n-1 in ascending order.
//   points: CSV, one point per row, equal dimension; optionally the last
//           column is an integer class label.

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "graphopt/graph.hpp"
#include "graphopt/points.hpp"
#include "graphopt/values.hpp"

namespace graphopt {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <class Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::optional<double> parse_double(std::string_view s) {
  double v{};
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace detail

inline Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  bool directed = false;
  bool have_header = false;
  std::vector<std::vector<NodeId>> adj;
  std::set<std::pair<NodeId, NodeId>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 4 || tok[0] != "n" || tok[2] != "directed")
        throw ParseError(lineno, "expected header 'n <n> directed <0|1>'");
      auto nn = detail::parse_int<std::size_t>(tok[1]);
      if (!nn) throw ParseError(lineno, "bad node count '" + std::string(tok[1]) + "'");
      if (tok[3] != "0" && tok[3] != "1") throw ParseError(lineno, "directed flag must be 0 or 1");
      n = *nn;
      directed = tok[3] == "1";
      adj.resize(n);
      have_header = true;
      continue;
    }
    if (tok.size() != 2) throw ParseError(lineno, "expected 'u v'");
    auto u = detail::parse_int<NodeId>(tok[0]);
    auto v = detail::parse_int<NodeId>(tok[1]);
    if (!u || !v) throw ParseError(lineno, "bad node id");
    if (*u >= n || *v >= n)
      throw ParseError(lineno, "edge " + std::to_string(*u) + " " + std::to_string(*v) + " out of range [0, " +
                                   std::to_string(n) + ")");
    if (*u == *v) throw ParseError(lineno, "self-loop at node " + std::to_string(*u));
    auto key = directed ? std::pair{*u, *v} : std::pair{std::min(*u, *v), std::max(*u, *v)};
    if (!seen.insert(key).second)
      throw ParseError(lineno, "duplicate edge " + std::to_string(*u) + " " + std::to_string(*v));
    adj[*u].push_back(*v);
    if (!directed) adj[*v].push_back(*u);
  }
  if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing header");
  return Graph::from_adjacency(std::move(adj), directed);
}

inline void write_graph(std::ostream& out, const Graph& g) {
  out << "n " << g.size() << " directed " << (g.directed() ? 1 : 0) << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

struct ValueCell {
  std::size_t line;
  std::string text;
};

/// Raw value cells in node order, validated for layout only. Kept textual so
/// callers can choose the number type (see exact.hpp).
inline std::vector<ValueCell> read_value_cells(std::istream& in, std::optional<std::size_t> expected_nodes = {}) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<ValueCell> cells;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto parts = detail::split(line, ',');
    if (parts.size() != 2) throw ParseError(lineno, "expected 'node,value'");
    auto node = detail::parse_int<std::size_t>(parts[0]);
    if (!node) throw ParseError(lineno, "bad node id '" + std::string(parts[0]) + "'");
    if (*node != cells.size())
      throw ParseError(lineno, "expected node " + std::to_string(cells.size()) + ", got " + std::to_string(*node));
    if (expected_nodes && *node >= *expected_nodes)
      throw ParseError(lineno, "node " + std::to_string(*node) + " out of range");
    if (parts[1].empty()) throw ParseError(lineno, "missing value");
    cells.push_back({lineno, std::string(parts[1])});
  }
  if (expected_nodes && cells.size() != *expected_nodes)
    throw ParseError(lineno, "expected " + std::to_string(*expected_nodes) + " values, got " +
                                 std::to_string(cells.size()));
  return cells;
}

inline ValueTable read_values(std::istream& in, std::optional<std::size_t> expected_nodes = {}) {
  std::vector<double> means;
  for (const auto& cell : read_value_cells(in, expected_nodes)) {
    auto v = detail::parse_double(cell.text);
    if (!v) throw ParseError(cell.line, "bad value '" + cell.text + "'");
    means.push_back(*v);
  }
  return ValueTable(std::move(means));
}

inline void write_values(std::ostream& out, const ValueTable& values) {
  for (NodeId i = 0; i < values.size(); ++i) out << i << ',' << format_double(values[i]) << '\n';
}

inline PointSet read_points(std::istream& in, bool labeled) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t dim = 0;
  std::vector<double> coords;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++lineno;
    if (detail::trim(line).empty()) continue;
    auto parts = detail::split(line, ',');
    const std::size_t width = parts.size() - (labeled ? 1 : 0);
    if (width == 0) throw ParseError(lineno, "row has no coordinates");
    if (dim == 0) dim = width;
    if (width != dim)
      throw ParseError(lineno, "row has " + std::to_string(width) + " coordinates, expected " + std::to_string(dim));
    for (std::size_t k = 0; k < width; ++k) {
      auto v = detail::parse_double(parts[k]);
      if (!v) throw ParseError(lineno, "bad coordinate '" + std::string(parts[k]) + "'");
      coords.push_back(*v);
    }
    if (labeled) {
      auto l = detail::parse_int<int>(parts.back());
      if (!l) throw ParseError(lineno, "bad label '" + std::string(parts.back()) + "'");
      labels.push_back(*l);
    }
  }
  if (dim == 0) throw ParseError(lineno == 0 ? 1 : lineno, "no points");
  return labeled ? PointSet(dim, std::move(coords), std::move(labels)) : PointSet(dim, std::move(coords));
}

inline void write_points(std::ostream& out, const PointSet& points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto p = points[i];
    for (std::size_t k = 0; k < p.size(); ++k) out << (k ? "," : "") << format_double(p[k]);
    if (points.has_labels()) out << ',' << points.label(i);
    out << '\n';
  }
}

// Path-based wrappers.

inline Graph load_graph(const std::filesystem::path& path) {
  auto in = detail::open_in(path);
  return read_graph(in);
}

inline std::pair<Graph, std::optional<ValueTable>> load_graph(const std::filesystem::path& graph_path,
                                                              const std::optional<std::filesystem::path>& values_path) {
  Graph g = load_graph(graph_path);
  std::optional<ValueTable> values;
  if (values_path) {
    auto in = detail::open_in(*values_path);
    values = read_values(in, g.size());
  }
  return {std::move(g), std::move(values)};
}

inline void save_graph(const Graph& g, const std::filesystem::path& graph_path,
                       const ValueTable* values = nullptr,
                       const std::optional<std::filesystem::path>& values_path = std::nullopt) {
  auto out = detail::open_out(graph_path);
  write_graph(out, g);
  if (values) {
    if (!values_path) throw std::invalid_argument("values given without a values path");
    if (values->size() != g.size()) throw std::invalid_argument("value table size does not match graph");
    auto vout = detail::open_out(*values_path);
    write_values(vout, *values);
  }
}

inline PointSet load_points(const std::filesystem::path& path, bool labeled) {
  auto in = detail::open_in(path);
  return read_points(in, labeled);
}

inline void save_points(const PointSet& points, const std::filesystem::path& path) {
  auto out = detail::open_out(path);
  write_points(out, points);
}

}  // namespace graphopt
