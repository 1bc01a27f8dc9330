#pragma once

#include "tfvs/tournament.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <numeric>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace tfvs {

/// Malformed instance, solution or metadata text. Line and column are
/// 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string & message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      _line(line), _column(column)
  {
  }

  auto line() const -> std::size_t { return _line; }
  auto column() const -> std::size_t { return _column; }

private:
  std::size_t _line, _column;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

struct Token
{
  std::string_view text;
  std::size_t column; // 1-based
};

struct Line
{
  std::size_t number; // 1-based
  std::vector<Token> tokens;
};

/// Non-blank lines with their whitespace-separated tokens.
inline auto tokenize(std::string_view text) -> std::vector<Line>
{
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    ++number;
    auto const raw = text.substr(pos, end - pos);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      auto start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])))
        ++i;
      if (i > start)
        line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty())
      lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

inline auto parse_unsigned(const Token & tok, std::size_t line, const char * what) -> std::uint64_t
{
  if (!tok.text.empty() && tok.text.front() == '-')
    throw ParseError(std::string("negative ") + what, line, tok.column);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec == std::errc::result_out_of_range)
    throw ParseError(std::string(what) + " out of range", line, tok.column);
  if (ec != std::errc() || ptr != tok.text.data() + tok.text.size())
    throw ParseError(std::string("expected nonnegative integer ") + what + ", got '" + std::string(tok.text) + "'", line,
                     tok.column);
  return value;
}

} // namespace detail

/**
 * Parses the instance text format:
 *
 *     n
 *     w_0 ... w_{n-1}
 *     row_0          (n characters '0'/'1'; column j is 1 iff arc i->j)
 *     ...
 *
 * Vertex ids are 0..n-1 in file order.
 */
inline auto parse_instance(std::string_view text) -> Instance
{
  auto const lines = detail::tokenize(text);
  if (lines.empty())
    throw ParseError("empty instance", 1, 0);

  auto const & header = lines[0];
  if (header.tokens.size() != 1)
    throw ParseError("header must contain exactly the vertex count", header.number, 0);
  auto const n64 = detail::parse_unsigned(header.tokens[0], header.number, "vertex count");
  if (n64 == 0 || n64 > (std::uint64_t{1} << 20))
    throw ParseError("vertex count out of supported range", header.number, header.tokens[0].column);
  auto const n = static_cast<std::size_t>(n64);

  if (lines.size() < 2)
    throw ParseError("missing weight line", header.number + 1, 0);
  auto const & wline = lines[1];
  if (wline.tokens.size() != n)
    throw ParseError("expected " + std::to_string(n) + " weights, got " + std::to_string(wline.tokens.size()),
                     wline.number, 0);
  std::vector<Weight> weights;
  weights.reserve(n);
  Weight total = 0;
  for (auto const & tok : wline.tokens) {
    weights.push_back(detail::parse_unsigned(tok, wline.number, "weight"));
    if (total > std::numeric_limits<Weight>::max() - weights.back())
      throw ParseError("total weight exceeds 64-bit range", wline.number, tok.column);
    total += weights.back();
  }

  if (lines.size() != n + 2) {
    auto const where = lines.size() < n + 2 ? lines.back().number + 1 : lines[n + 2].number;
    throw ParseError("expected " + std::to_string(n) + " matrix rows, got " + std::to_string(lines.size() - 2), where,
                     0);
  }

  std::vector<VertexSet> rows(n, VertexSet(n));
  for (Index i = 0; i < n; ++i) {
    auto const & line = lines[i + 2];
    if (line.tokens.size() != 1 || line.tokens[0].text.size() != n)
      throw ParseError("matrix row must be " + std::to_string(n) + " characters of 0/1", line.number, 0);
    auto const & tok = line.tokens[0];
    for (Index j = 0; j < n; ++j) {
      auto c = tok.text[j];
      if (c == '1')
        rows[i].insert(j);
      else if (c != '0')
        throw ParseError(std::string("invalid matrix character '") + c + "'", line.number, tok.column + j);
    }
  }
  for (Index i = 0; i < n; ++i) {
    auto const row_line = lines[i + 2].number;
    auto const col0 = lines[i + 2].tokens[0].column;
    if (rows[i].contains(i))
      throw ParseError("diagonal set (" + std::to_string(i) + "," + std::to_string(i) + ")", row_line, col0 + i);
    for (Index j = i + 1; j < n; ++j) {
      bool ij = rows[i].contains(j), ji = rows[j].contains(i);
      if (ij && ji)
        throw ParseError("symmetric pair (" + std::to_string(i) + "," + std::to_string(j) + ")", row_line, col0 + j);
      if (!ij && !ji)
        throw ParseError("missing arc (" + std::to_string(i) + "," + std::to_string(j) + ")", row_line, col0 + j);
    }
  }

  std::vector<VertexId> ids(n);
  std::iota(ids.begin(), ids.end(), VertexId{0});
  return Instance{Tournament::from_rows(std::move(ids), std::move(rows)), WeightMap(std::move(weights))};
}

/// Inverse of parse_instance. Rows are written in index order; ids are not
/// stored, so a re-parsed instance has ids 0..n-1.
inline auto format_instance(const Instance & inst) -> std::string
{
  auto const & t = inst.tournament;
  auto const n = t.size();
  std::string out = std::to_string(n) + "\n";
  for (Index v = 0; v < n; ++v) {
    if (v)
      out += ' ';
    out += std::to_string(inst.weights[v]);
  }
  out += '\n';
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j)
      out += t.has_arc(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

/// Solution file: total weight, size, ascending ids (one line each).
inline auto format_solution(const Solution & s) -> std::string
{
  std::string out = std::to_string(s.weight) + "\n" + std::to_string(s.vertices.size()) + "\n";
  for (std::size_t i = 0; i < s.vertices.size(); ++i) {
    if (i)
      out += ' ';
    out += std::to_string(s.vertices[i]);
  }
  out += '\n';
  return out;
}

inline auto parse_solution(std::string_view text) -> Solution
{
  auto const lines = detail::tokenize(text);
  if (lines.size() < 2)
    throw ParseError("solution needs weight and size lines", lines.empty() ? 1 : lines.back().number + 1, 0);
  for (std::size_t i = 0; i < 2; ++i)
    if (lines[i].tokens.size() != 1)
      throw ParseError("expected a single integer", lines[i].number, 0);
  Solution s;
  s.weight = detail::parse_unsigned(lines[0].tokens[0], lines[0].number, "weight");
  auto const k = detail::parse_unsigned(lines[1].tokens[0], lines[1].number, "solution size");
  if (k == 0) {
    if (lines.size() > 2)
      throw ParseError("unexpected vertex list for empty solution", lines[2].number, 0);
    return s;
  }
  if (lines.size() != 3)
    throw ParseError("expected exactly one vertex line", lines.size() > 3 ? lines[3].number : lines[1].number + 1, 0);
  auto const & vl = lines[2];
  if (vl.tokens.size() != k)
    throw ParseError("expected " + std::to_string(k) + " vertex ids, got " + std::to_string(vl.tokens.size()),
                     vl.number, 0);
  for (auto const & tok : vl.tokens) {
    auto id = detail::parse_unsigned(tok, vl.number, "vertex id");
    if (id > std::numeric_limits<VertexId>::max())
      throw ParseError("vertex id out of range", vl.number, tok.column);
    if (!s.vertices.empty() && id <= s.vertices.back())
      throw ParseError("vertex ids must be strictly ascending", vl.number, tok.column);
    s.vertices.push_back(static_cast<VertexId>(id));
  }
  return s;
}

/// Sidecar metadata: one `key=value` per line, keys sorted on output.
using Metadata = std::map<std::string, std::string>;

inline auto format_metadata(const Metadata & meta) -> std::string
{
  std::string out;
  for (auto const & [k, v] : meta)
    out += k + "=" + v + "\n";
  return out;
}

inline auto parse_metadata(std::string_view text) -> Metadata
{
  Metadata meta;
  std::size_t number = 0, pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    ++number;
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line.front() == '#')
      continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError("expected key=value", number, 0);
    meta[std::string(line.substr(0, eq))] = std::string(line.substr(eq + 1));
  }
  return meta;
}

inline auto read_file(const std::string & path) -> std::string
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline auto write_file(const std::string & path, std::string_view contents) -> void
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot write " + path);
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out)
    throw IoError("write failed for " + path);
}

} // namespace tfvs
