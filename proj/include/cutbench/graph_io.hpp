#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cutbench/graph.hpp"

namespace cutbench {

/// Raised on malformed .edg input; the message carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, int line, const char* what) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  return value;
}

}  // namespace detail

/// Text graph format (".edg"): line 1 is "N M", followed by M lines "u v w"
/// with 0-based indices, u < v, and decimal weights. LF line endings, UTF-8.
inline WeightedGraph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next_line = [&](const char* what) {
    if (!std::getline(in, line)) throw ParseError(lineno + 1, std::string("missing ") + what);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };

  next_line("header");
  auto header = detail::split_fields(line);
  if (header.size() != 2) throw ParseError(lineno, "header must be 'N M'");
  const int n = detail::parse_number<int>(header[0], lineno, "node count");
  const long m = detail::parse_number<long>(header[1], lineno, "edge count");
  if (n < 2) throw ParseError(lineno, "node count must be >= 2");
  if (m < 0) throw ParseError(lineno, "edge count must be >= 0");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::unordered_set<long long> seen;
  seen.reserve(static_cast<std::size_t>(m) * 2);
  for (long k = 0; k < m; ++k) {
    next_line("edge line");
    auto fields = detail::split_fields(line);
    if (fields.size() != 3) throw ParseError(lineno, "edge line must be 'u v w'");
    Edge e;
    e.u = detail::parse_number<int>(fields[0], lineno, "node index");
    e.v = detail::parse_number<int>(fields[1], lineno, "node index");
    e.w = detail::parse_number<double>(fields[2], lineno, "weight");
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw ParseError(lineno, "node index out of range");
    if (e.u >= e.v) throw ParseError(lineno, "edge must satisfy u < v");
    if (!(e.w >= 0.0)) throw ParseError(lineno, "weight must be >= 0");
    if (!seen.insert(static_cast<long long>(e.u) * n + e.v).second)
      throw ParseError(lineno, "duplicate edge");
    edges.push_back(e);
  }
  try {
    return WeightedGraph(n, std::move(edges));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(lineno, ex.what());
  }
}

inline WeightedGraph read_graph(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  return read_graph(in);
}

/// Shortest decimal that round-trips the double exactly.
inline std::string format_weight(double w) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
  return std::string(buf, ptr);
}

inline void write_graph(const WeightedGraph& g, std::ostream& out) {
  out << g.n() << ' ' << g.edges().size() << '\n';
  for (const auto& e : g.edges())
    out << e.u << ' ' << e.v << ' ' << format_weight(e.w) << '\n';
}

inline void write_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open graph file for writing: " + path);
  write_graph(g, out);
  out.flush();
  if (!out) throw std::runtime_error("failed to write graph file: " + path);
}

}  // namespace cutbench
