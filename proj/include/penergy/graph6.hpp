#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "penergy/error.hpp"
#include "penergy/graph.hpp"

namespace penergy {

// graph6: a size field N(n) followed by the upper triangle of the adjacency
// matrix in column order (0,1),(0,2),(1,2),(0,3),... packed six bits per
// byte, most significant bit first, each byte offset by 63.

namespace detail {

inline constexpr char kGraph6Header[] = ">>graph6<<";

inline void append_size_field(std::string& out, long long n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  } else {
    out.append("~~");
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
}

inline int graph6_byte(char c, std::size_t pos) {
  const int b = static_cast<unsigned char>(c);
  if (b < 63 || b > 126) {
    throw Error(Errc::malformed_byte, "byte " + std::to_string(b) + " at offset " + std::to_string(pos) +
                                          " outside 63..126");
  }
  return b - 63;
}

}  // namespace detail

/// Number of bytes a graph6 record of order n occupies, size field included.
inline std::size_t graph6_length(long long n) {
  const std::size_t size_field = n <= 62 ? 1 : (n <= 258047 ? 4 : 8);
  const long long bits = n * (n - 1) / 2;
  return size_field + static_cast<std::size_t>((bits + 5) / 6);
}

inline std::string encode_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  out.reserve(graph6_length(n));
  detail::append_size_field(out, n);
  int acc = 0;
  int filled = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      acc = (acc << 1) | (g.has_edge(u, v) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

inline Graph decode_graph6(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  if (line.empty()) throw Error(Errc::wrong_length, "empty record");

  long long n = 0;
  std::size_t pos = 0;
  if (line[0] != '~') {
    n = detail::graph6_byte(line[0], 0);
    pos = 1;
  } else if (line.size() >= 2 && line[1] == '~') {
    if (line.size() < 8) throw Error(Errc::wrong_length, "truncated 8-byte size field");
    for (pos = 2; pos < 8; ++pos) n = (n << 6) | detail::graph6_byte(line[pos], pos);
  } else {
    if (line.size() < 4) throw Error(Errc::wrong_length, "truncated 4-byte size field");
    for (pos = 1; pos < 4; ++pos) n = (n << 6) | detail::graph6_byte(line[pos], pos);
  }
  if (n > kMaxVertices) {
    throw Error(Errc::oversize_n, "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxVertices));
  }

  const long long bits = n * (n - 1) / 2;
  const std::size_t expected = pos + static_cast<std::size_t>((bits + 5) / 6);
  if (line.size() != expected) {
    throw Error(Errc::wrong_length, "record has " + std::to_string(line.size()) + " bytes, order " +
                                        std::to_string(n) + " needs " + std::to_string(expected));
  }

  std::vector<Edge> edges;
  long long k = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++k) {
      const std::size_t at = pos + static_cast<std::size_t>(k / 6);
      const int byte = detail::graph6_byte(line[at], at);
      if ((byte >> (5 - k % 6)) & 1) edges.emplace_back(u, v);
    }
  }
  if (bits % 6 != 0) {
    const std::size_t last = expected - 1;
    const int byte = detail::graph6_byte(line[last], last);
    if ((byte & ((1 << (6 - bits % 6)) - 1)) != 0) {
      throw Error(Errc::malformed_byte, "nonzero padding bits in final byte");
    }
  }
  for (std::size_t i = pos; i < expected; ++i) detail::graph6_byte(line[i], i);
  return Graph(static_cast<int>(n), edges);
}

/// Line-oriented graph6 reader. Blank lines and a leading ">>graph6<<"
/// header are skipped; trailing carriage returns are tolerated.
class Graph6Reader {
 public:
  enum class Mode { strict, lenient };

  struct Record {
    std::size_t line_number = 0;
    std::string text;
    Graph graph;
  };

  explicit Graph6Reader(std::istream& in, Mode mode = Mode::strict) : in_(in), mode_(mode) {}

  /// Next decoded record, or nullopt at end of stream. In strict mode a
  /// malformed record throws with the line number prefixed; in lenient mode
  /// it is counted and skipped.
  std::optional<Record> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::string_view text(line);
      if (text.starts_with(detail::kGraph6Header)) text.remove_prefix(sizeof(detail::kGraph6Header) - 1);
      if (text.empty()) continue;
      try {
        return Record{line_number_, std::string(text), decode_graph6(text)};
      } catch (const Error& e) {
        if (mode_ == Mode::strict) {
          throw Error(e.code(), "line " + std::to_string(line_number_) + ": " + e.what());
        }
        ++skipped_;
        if (errors_.size() < 16) errors_.push_back("line " + std::to_string(line_number_) + ": " + e.what());
      }
    }
    return std::nullopt;
  }

  std::size_t line_number() const noexcept { return line_number_; }
  std::size_t skipped() const noexcept { return skipped_; }
  const std::vector<std::string>& errors() const noexcept { return errors_; }

 private:
  std::istream& in_;
  Mode mode_;
  std::size_t line_number_ = 0;
  std::size_t skipped_ = 0;
  std::vector<std::string> errors_;
};

inline std::vector<Graph> read_graph6(std::istream& in, Graph6Reader::Mode mode = Graph6Reader::Mode::strict) {
  Graph6Reader reader(in, mode);
  std::vector<Graph> out;
  while (auto rec = reader.next()) out.push_back(std::move(rec->graph));
  return out;
}

}  // namespace penergy
