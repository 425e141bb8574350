#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <string>

#include "penergy/graph.hpp"
#include "penergy/graph6.hpp"

using namespace penergy;

namespace {

// Bit-by-bit encoder written from the format description.
std::string reference_encode(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back(126);
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  std::string bits;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) bits.push_back(g.has_edge(i, j) ? '1' : '0');
  while (bits.size() % 6 != 0) bits.push_back('0');
  for (std::size_t k = 0; k < bits.size(); k += 6) out.push_back(static_cast<char>(63 + std::stoi(bits.substr(k, 6), nullptr, 2)));
  return out;
}

Graph random_graph(int n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

}  // namespace

TEST(Graph6, HandEncodedFixtures) {
  EXPECT_EQ(decode_graph6("Bw"), make_family(Family::complete, {3}));
  EXPECT_EQ(decode_graph6("Bg"), make_family(Family::path, {3}));
  EXPECT_EQ(decode_graph6("?"), Graph(0));
  EXPECT_EQ(encode_graph6(make_family(Family::complete, {3})), "Bw");
  EXPECT_EQ(encode_graph6(make_family(Family::path, {3})), "Bg");
  EXPECT_EQ(encode_graph6(Graph(0)), "?");
  EXPECT_EQ(encode_graph6(Graph(1)), "@");
}

TEST(Graph6, MatchesReferenceEncoder) {
  std::mt19937_64 rng(7);
  for (int n : {2, 5, 7, 12, 40, 62, 63, 64, 100}) {
    const Graph g = random_graph(n, rng);
    const std::string s = encode_graph6(g);
    EXPECT_EQ(s, reference_encode(g)) << n;
    EXPECT_EQ(s.size(), graph6_length(n));
    EXPECT_EQ(decode_graph6(s), g);
  }
}

TEST(Graph6, LargeSizeFieldRoundTrips) {
  const Graph g(300);
  const std::string s = encode_graph6(g);
  EXPECT_EQ(s.substr(0, 4), "~?Ck");
  EXPECT_EQ(decode_graph6(s).order(), 300);
}

TEST(Graph6, RejectsMalformedInput) {
  auto code = [](std::string_view s) {
    try {
      decode_graph6(s);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::internal;
  };
  EXPECT_EQ(code("B "), Errc::malformed_byte);
  EXPECT_EQ(code("B"), Errc::wrong_length);
  EXPECT_EQ(code("Bww"), Errc::wrong_length);
  EXPECT_EQ(code(""), Errc::wrong_length);
  // Nonzero padding: K_3 uses 3 of 6 bits.
  EXPECT_EQ(code("Bx"), Errc::malformed_byte);
}

TEST(Graph6, ReaderSkipsHeaderBlankLinesAndCarriageReturns) {
  std::istringstream in(">>graph6<<Bw\r\n\nBg\n");
  Graph6Reader reader(in);
  auto a = reader.next();
  ASSERT_TRUE(a);
  EXPECT_EQ(a->text, "Bw");
  EXPECT_EQ(a->line_number, 1u);
  auto b = reader.next();
  ASSERT_TRUE(b);
  EXPECT_EQ(b->text, "Bg");
  EXPECT_EQ(b->line_number, 3u);
  EXPECT_FALSE(reader.next());
}

TEST(Graph6, StrictReaderReportsLineNumber) {
  std::istringstream in("Bw\nB!\n");
  Graph6Reader reader(in);
  reader.next();
  try {
    reader.next();
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}

TEST(Graph6, LenientReaderCountsSkips) {
  std::istringstream in("Bw\nB!\nBg\n");
  const Graph6Reader::Mode lenient = Graph6Reader::Mode::lenient;
  Graph6Reader reader(in, lenient);
  int good = 0;
  while (reader.next()) ++good;
  EXPECT_EQ(good, 2);
  EXPECT_EQ(reader.skipped(), 1u);
  ASSERT_EQ(reader.errors().size(), 1u);
}
