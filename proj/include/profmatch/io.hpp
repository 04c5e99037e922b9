#pragma once

// Text formats.
//
// Instance:
//   a_count b_count r
//   U_1 ... U_r
//   a b u_1 ... u_r        (one line per edge)
//
// Weight assignment:
//   a b weight_decimal     (one line per edge, arbitrary length)
//
// Tokens are whitespace-separated; '#' starts a comment running to end of line.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "profmatch/core.hpp"
#include "profmatch/error.hpp"
#include "profmatch/weight.hpp"

namespace profmatch {

namespace detail {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream fields(text);
    Line line{number, {}};
    for (std::string tok; fields >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline std::uint64_t parse_uint(const std::string& tok, std::size_t line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected a non-negative integer, got '" + tok + "'");
  try {
    std::size_t used = 0;
    const auto v = std::stoull(tok, &used);
    return v;
  } catch (const std::out_of_range&) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": '" + tok + "' is out of range");
  }
}

inline Weight parse_weight(const std::string& tok, std::size_t line) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": expected a non-negative decimal weight, got '" + tok + "'");
  return Weight(tok);
}

}  // namespace detail

inline Instance read_instance(std::istream& in) {
  const auto lines = detail::tokenize(in);
  if (lines.size() < 2) throw Error(ErrorCode::parse_error, "instance needs a header line and a bounds line");
  const auto& header = lines[0];
  if (header.tokens.size() != 3)
    throw Error(ErrorCode::parse_error, "line " + std::to_string(header.number) + ": header must be 'a_count b_count r'");
  const auto a_count = detail::parse_uint(header.tokens[0], header.number);
  const auto b_count = detail::parse_uint(header.tokens[1], header.number);
  const auto r = detail::parse_uint(header.tokens[2], header.number);
  if (r == 0) throw Error(ErrorCode::parse_error, "line " + std::to_string(header.number) + ": r must be at least 1");
  const auto& bounds_line = lines[1];
  if (bounds_line.tokens.size() != r)
    throw Error(ErrorCode::parse_error, "line " + std::to_string(bounds_line.number) + ": expected " + std::to_string(r) + " bounds");
  std::vector<Utility> bounds;
  for (const auto& tok : bounds_line.tokens) bounds.push_back(detail::parse_uint(tok, bounds_line.number));
  Instance inst(a_count, b_count, bounds);
  std::vector<Utility> u(r);
  for (std::size_t k = 2; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != r + 2)
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line.number) + ": expected 'a b' and " + std::to_string(r) + " utilities");
    const auto a = detail::parse_uint(line.tokens[0], line.number);
    const auto b = detail::parse_uint(line.tokens[1], line.number);
    for (std::size_t i = 0; i < r; ++i) u[i] = detail::parse_uint(line.tokens[i + 2], line.number);
    try {
      inst.add_edge(a, b, u);
    } catch (const Error& e) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line.number) + ": " + e.what());
    }
  }
  return inst;
}

inline void write_instance(std::ostream& out, const Instance& inst) {
  out << inst.a_count() << ' ' << inst.b_count() << ' ' << inst.r() << '\n';
  for (std::size_t i = 0; i < inst.r(); ++i) out << (i ? " " : "") << inst.bounds()[i];
  out << '\n';
  for (EdgeId e = 0; e < inst.edge_count(); ++e) {
    out << inst.edge(e).a << ' ' << inst.edge(e).b;
    for (const auto u : inst.utilities(e)) out << ' ' << u;
    out << '\n';
  }
}

struct WeightedEdge {
  Edge edge;
  Weight weight;
};

inline std::vector<WeightedEdge> read_weight_list(std::istream& in) {
  std::vector<WeightedEdge> out;
  for (const auto& line : detail::tokenize(in)) {
    if (line.tokens.size() != 3)
      throw Error(ErrorCode::parse_error, "line " + std::to_string(line.number) + ": expected 'a b weight'");
    out.push_back({{detail::parse_uint(line.tokens[0], line.number), detail::parse_uint(line.tokens[1], line.number)},
                   detail::parse_weight(line.tokens[2], line.number)});
  }
  return out;
}

/// Weight list placed on an a_count x b_count grid; unlisted pairs weigh 0.
inline WeightAssignment to_weight_assignment(const std::vector<WeightedEdge>& list, std::size_t a_count,
                                             std::size_t b_count) {
  WeightAssignment w(a_count, b_count);
  for (const auto& entry : list) {
    if (entry.edge.a >= a_count || entry.edge.b >= b_count)
      throw Error(ErrorCode::unknown_edge, "weight for (" + std::to_string(entry.edge.a) + "," +
                                               std::to_string(entry.edge.b) + ") outside the instance");
    w.set(entry.edge.a, entry.edge.b, entry.weight);
  }
  return w;
}

/// Writes one line per pair of the grid in row-major order.
inline void write_weights(std::ostream& out, const WeightAssignment& w) {
  for (std::size_t a = 0; a < w.a_count(); ++a)
    for (std::size_t b = 0; b < w.b_count(); ++b) out << a << ' ' << b << ' ' << w.at(a, b).str() << '\n';
}

inline void write_weight_list(std::ostream& out, const std::vector<WeightedEdge>& list) {
  for (const auto& entry : list) out << entry.edge.a << ' ' << entry.edge.b << ' ' << entry.weight.str() << '\n';
}

}  // namespace profmatch
