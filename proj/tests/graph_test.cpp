#include <gtest/gtest.h>

#include <vector>

#include "penergy/graph.hpp"

using namespace penergy;

namespace {

void expect_error(Errc code, auto&& fn) {
  try {
    fn();
    FAIL() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Edge, NormalizesEndpoints) {
  const Edge e(5, 2);
  EXPECT_EQ(e.u, 2);
  EXPECT_EQ(e.v, 5);
  EXPECT_EQ(Edge(2, 5), e);
}

TEST(Graph, BasicQueries) {
  const Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.size(), 3);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 3));
  EXPECT_EQ(g.degree(1), 2);
  EXPECT_EQ(g.neighbors(2), (std::vector<int>{1, 3}));
  EXPECT_EQ(g.edges().size(), 3u);
  EXPECT_EQ(g.non_edges().size(), 3u);
}

TEST(Graph, RejectsBadInput) {
  expect_error(Errc::edge_present, [] { Graph(3, {{0, 1}, {1, 0}}); });
  expect_error(Errc::vertex_out_of_range, [] { Graph(3, {{0, 3}}); });
  expect_error(Errc::oversize_n, [] { Graph(kMaxVertices + 1); });
  expect_error(Errc::oversize_n, [] { Graph(-1); });
}

TEST(Graph, SelfLoopRejected) {
  EXPECT_THROW(Graph(3, {{1, 1}}), Error);
}

TEST(Graph, EdgeMutationsReturnNewGraphs) {
  const Graph g(3, {{0, 1}});
  const Graph h = g.add_edge({1, 2});
  EXPECT_EQ(g.size(), 1);
  EXPECT_EQ(h.size(), 2);
  EXPECT_EQ(h.remove_edge({1, 2}), g);
  expect_error(Errc::edge_present, [&] { g.add_edge({0, 1}); });
  expect_error(Errc::edge_absent, [&] { g.remove_edge({1, 2}); });
}

TEST(Graph, RemoveVertexRelabelsDown) {
  const Graph c4 = make_family(Family::cycle, {4});
  const Graph p3 = c4.remove_vertex(0);
  EXPECT_EQ(p3, make_family(Family::path, {3}));
}

TEST(Graph, RelabelPermutesAdjacency) {
  const Graph p3 = make_family(Family::path, {3});
  const std::vector<int> order{1, 0, 2};
  const Graph star = p3.relabel(order);
  EXPECT_EQ(star, make_family(Family::star, {3}));
}

TEST(Graph, ComplementIsInvolution) {
  const Graph g = make_family(Family::double_star, {3, 4});
  const Graph gc = complement(g);
  EXPECT_EQ(g.size() + gc.size(), 7 * 6 / 2);
  EXPECT_EQ(complement(gc), g);
}

TEST(Graph, Connectivity) {
  EXPECT_TRUE(is_connected(Graph(1)));
  EXPECT_FALSE(is_connected(Graph(2)));
  EXPECT_TRUE(is_connected(make_family(Family::path, {6})));
  expect_error(Errc::empty_graph, [] { is_connected(Graph(0)); });
  EXPECT_TRUE(is_tree(make_family(Family::star, {5})));
  EXPECT_FALSE(is_tree(make_family(Family::cycle, {5})));
}

TEST(Families, ParseNamesAndAliases) {
  EXPECT_EQ(parse_family("snn"), Family::double_star_complement);
  EXPECT_EQ(parse_family("snn_plus"), Family::double_star_complement_plus);
  for (Family f : {Family::empty, Family::path, Family::cycle, Family::star, Family::complete, Family::double_star,
                   Family::double_star_complement, Family::double_star_complement_plus}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_THROW(parse_family("wheel"), Error);
}

TEST(Families, DoubleStarLabeling) {
  const Graph g = make_family(Family::double_star, {3, 4});
  EXPECT_EQ(g.order(), 7);
  EXPECT_EQ(g.size(), 6);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_EQ(g.neighbors(0), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(g.neighbors(1), (std::vector<int>{0, 4, 5, 6}));
}

TEST(Families, ComplementFamilies) {
  const Graph snn = make_family(Family::double_star_complement, {5, 5});
  const Graph plus = make_family(Family::double_star_complement_plus, {5, 5});
  EXPECT_FALSE(snn.has_edge(0, 1));
  EXPECT_TRUE(plus.has_edge(0, 1));
  EXPECT_EQ(plus.size(), snn.size() + 1);
  EXPECT_EQ(snn.size(), 45 - 9);
}

TEST(Families, ParameterValidation) {
  expect_error(Errc::invalid_parameter, [] { make_family(Family::cycle, {2}); });
  expect_error(Errc::invalid_parameter, [] { make_family(Family::double_star, {1, 3}); });
  expect_error(Errc::invalid_parameter, [] { make_family(Family::path, {3, 4}); });
}

TEST(Families, EdgeCounts) {
  EXPECT_EQ(make_family(Family::complete, {6}).size(), 15);
  EXPECT_EQ(make_family(Family::star, {6}).size(), 5);
  EXPECT_EQ(make_family(Family::path, {6}).size(), 5);
  EXPECT_EQ(make_family(Family::cycle, {6}).size(), 6);
  EXPECT_EQ(make_family(Family::empty, {6}).size(), 0);
}
