#include "qwalk/graph.hpp"

#include <fstream>
#include <sstream>

namespace qwalk {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";

int sextet(std::string_view text, std::size_t pos) {
  if (pos >= text.size())
    throw Graph6Error("record truncated", pos);
  const int c = static_cast<unsigned char>(text[pos]);
  if (c < 63 || c > 126)
    throw Graph6Error("byte outside graph6 range", pos);
  return c - 63;
}

} // namespace

Graph6Error::Graph6Error(std::string reason, std::size_t offset)
    : std::runtime_error("graph6: " + reason + " at byte " + std::to_string(offset)),
      reason_(std::move(reason)), offset_(offset) {}

Graph decode_graph6(std::string_view text) {
  if (text.starts_with(kHeader))
    text.remove_prefix(kHeader.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.remove_suffix(1);
  if (text.empty())
    throw Graph6Error("record truncated", 0);

  std::size_t pos = 0;
  long n = sextet(text, pos++);
  if (n == 63) {
    if (text.size() > 1 && text[1] == '~')
      throw Graph6Error("malformed length prefix (n > 258047 unsupported)", 1);
    n = 0;
    for (int i = 0; i < 3; ++i)
      n = (n << 6) | sextet(text, pos++);
    if (n < 63)
      throw Graph6Error("malformed length prefix (non-canonical size)", 1);
  }
  if (n < 1)
    throw Graph6Error("malformed length prefix (n must be >= 1)", 0);

  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t body = (bits + 5) / 6;
  const std::size_t start = pos;
  if (text.size() < start + body)
    throw Graph6Error("record truncated", text.size());
  if (text.size() > start + body)
    throw Graph6Error("unexpected trailing data", start + body);

  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
  std::size_t k = 0;
  for (long j = 1; j < n; ++j) {
    for (long i = 0; i < j; ++i, ++k) {
      const int byte = sextet(text, start + k / 6);
      if ((byte >> (5 - k % 6)) & 1)
        a(i, j) = a(j, i) = 1;
    }
  }
  if (body > 0) {
    const std::size_t last = start + body - 1;
    const int pad = static_cast<int>(body * 6 - bits);
    if (sextet(text, last) & ((1 << pad) - 1))
      throw Graph6Error("trailing padding bits nonzero", last);
  }
  return Graph(std::move(a));
}

std::string encode_graph6(const Graph &g) {
  const long n = g.n();
  if (n > kGraph6MaxVertices)
    throw std::length_error("graph6: n exceeds supported range");
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
  } else {
    out.push_back(static_cast<char>(126));
    for (int shift = 12; shift >= 0; shift -= 6)
      out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (long j = 1; j < n; ++j) {
    for (long i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = filled = 0;
      }
    }
  }
  if (filled > 0)
    out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

std::vector<Graph> parse_graph6_lines(std::string_view text) {
  std::vector<Graph> out;
  std::size_t line_start = 0;
  while (line_start < text.size()) {
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.starts_with(kHeader))
      line.remove_prefix(kHeader.size());
    if (!line.empty()) {
      try {
        out.push_back(decode_graph6(line));
      } catch (const Graph6Error &e) {
        throw Graph6Error(e.reason() + " in record " + std::to_string(out.size() + 1),
                          line_start + e.offset());
      }
    }
    line_start = end + 1;
  }
  return out;
}

std::vector<Graph> read_graph6_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_graph6_lines(ss.str());
}

} // namespace qwalk
