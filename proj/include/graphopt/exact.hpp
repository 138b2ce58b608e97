#pragma once

// Exact rational arithmetic for certification. Decimal text such as "0.636"
// or "1e-3" converts to the rational it denotes, with no binary rounding.

#include <cstddef>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "graphopt/graph_io.hpp"

namespace graphopt {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "[-]digits[.digits][e[+-]digits]" or "p/q" into an exact rational.
inline std::optional<Rational> parse_exact(std::string_view s) {
  using boost::multiprecision::cpp_int;
  s = detail::trim(s);
  if (s.empty()) return std::nullopt;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_exact(s.substr(0, slash));
    auto den = parse_exact(s.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return *num / *den;
  }
  bool negative = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  cpp_int mantissa = 0;
  long long scale = 0;
  bool digits = false, point = false;
  for (; i < s.size(); ++i) {
    const char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      mantissa = mantissa * 10 + (ch - '0');
      if (point) --scale;
      digits = true;
    } else if (ch == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (!digits) return std::nullopt;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return std::nullopt;
    auto exp = detail::parse_int<long long>(s.substr(i + 1 + (i + 1 < s.size() && s[i + 1] == '+')));
    if (!exp || *exp > 4000 || *exp < -4000) return std::nullopt;
    scale += *exp;
  }
  cpp_int ten_pow = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
  Rational r = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  return negative ? Rational(-r) : r;
}

inline Rational parse_exact_or_throw(std::string_view s) {
  auto r = parse_exact(s);
  if (!r) throw std::invalid_argument("not an exact number: '" + std::string(s) + "'");
  return *r;
}

/// Value file read as exact rationals.
inline std::vector<Rational> read_values_exact(std::istream& in, std::optional<std::size_t> expected_nodes = {}) {
  std::vector<Rational> out;
  for (const auto& cell : read_value_cells(in, expected_nodes)) {
    auto v = parse_exact(cell.text);
    if (!v) throw ParseError(cell.line, "bad value '" + cell.text + "'");
    out.push_back(*v);
  }
  return out;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double d) { return d; }

}  // namespace graphopt
