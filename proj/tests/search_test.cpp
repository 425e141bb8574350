#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "oracles.hpp"
#include "penergy/search.hpp"

using namespace penergy;

namespace {

Graph random_graph(int n, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return Graph(n, edges);
}

Graph shuffle(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> order(static_cast<std::size_t>(g.order()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  return g.relabel(order);
}

ConjectureSpec stream_spec(ConjectureKind kind, std::vector<double> p) {
  return {kind, std::move(p), 1, Source::graph6_stream};
}

}  // namespace

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const Graph g = random_graph(1 + trial % 16, rng);
    const std::string key = canonical_graph6(g);
    EXPECT_EQ(canonical_graph6(shuffle(g, rng)), key);
    EXPECT_EQ(encode_graph6(canonical_form(g)), key);
  }
}

TEST(Canonical, RegularAndSymmetricGraphs) {
  std::mt19937_64 rng(59);
  for (const Graph& g : {make_family(Family::cycle, {12}), make_family(Family::complete, {9}), Graph(7),
                         make_family(Family::double_star_complement, {6, 6})}) {
    EXPECT_EQ(canonical_graph6(shuffle(g, rng)), canonical_graph6(g));
  }
  // C_6 and two triangles are both 2-regular on six vertices.
  const Graph two_triangles(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  EXPECT_NE(canonical_graph6(make_family(Family::cycle, {6})), canonical_graph6(two_triangles));
}

TEST(Canonical, DistinguishesAllSmallClasses) {
  // Number of distinct canonical forms over all labeled graphs on 5 vertices.
  const int n = 5;
  std::vector<Edge> slots;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) slots.emplace_back(u, v);
  std::set<std::string> keys;
  for (unsigned mask = 0; mask < (1U << slots.size()); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if ((mask >> k) & 1U) edges.push_back(slots[k]);
    keys.insert(canonical_graph6(Graph(n, edges)));
  }
  EXPECT_EQ(keys.size(), 34u);
}

TEST(Enumeration, ConnectedCountsMatchBruteForce) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_EQ(enumerate_connected_graph6(n).size(), oracle::count_connected_classes(n)) << n;
  }
}

TEST(Enumeration, KnownConnectedCounts) {
  const std::size_t expected[] = {1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    const auto all = enumerate_connected_graph6(n);
    EXPECT_EQ(all.size(), expected[n - 1]);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    for (const auto& s : all) EXPECT_TRUE(is_connected(decode_graph6(s)));
  }
  EXPECT_THROW(enumerate_connected_graph6(kMaxEnumeratedConnected + 1), Error);
}

TEST(Enumeration, TreesMatchPrueferOracle) {
  for (int n = 2; n <= 8; ++n) {
    const auto trees = enumerate_trees(n);
    EXPECT_EQ(trees.size(), oracle::count_free_trees(n)) << n;
    std::set<std::string> keys;
    for (const Graph& t : trees) {
      ASSERT_TRUE(is_tree(t));
      oracle::EdgeList edges;
      for (const Edge& e : t.edges()) edges.emplace_back(e.u, e.v);
      keys.insert(oracle::tree_key(n, edges));
    }
    EXPECT_EQ(keys.size(), trees.size());
  }
  EXPECT_EQ(enumerate_trees_graph6(10).size(), 106u);
}

TEST(Verify, DoubleStarComplementCounterexamples) {
  for (auto [n1, n2, margin] : {std::tuple{5, 5, -0.156349306236}, std::tuple{5, 4, -0.00512}}) {
    std::istringstream in(encode_graph6(make_family(Family::double_star_complement, {n1, n2})));
    const VerificationReport r = verify(stream_spec(ConjectureKind::sq_monotone, {2.0}), &in);
    ASSERT_EQ(r.violations.size(), 1u);
    EXPECT_EQ(r.violations[0].edge, Edge(0, 1));
    EXPECT_NEAR(r.violations[0].margin, margin, 1e-5);
    EXPECT_FALSE(r.clean());
  }
}

TEST(Verify, NoViolationsBelowThresholdOrder) {
  std::istringstream in(encode_graph6(make_family(Family::double_star_complement, {4, 4})));
  const VerificationReport r = verify(stream_spec(ConjectureKind::sq_monotone, {2.0}), &in);
  EXPECT_TRUE(r.clean());
}

TEST(Verify, HongOnSmallGraphs) {
  for (int n = 2; n <= 6; ++n) {
    const VerificationReport r = verify({ConjectureKind::hong, {2.0}, n, Source::internal_enumeration});
    EXPECT_TRUE(r.clean()) << n;
    EXPECT_EQ(r.graphs_checked, enumerate_connected_graph6(n).size());
    // Trees attain equality.
    EXPECT_GE(r.tight, 1u);
  }
}

TEST(Verify, PathLowerAttainedByPath) {
  const VerificationReport r = verify({ConjectureKind::path_lower, {2.0, 2.5, 3.0}, 6, Source::internal_enumeration});
  EXPECT_TRUE(r.clean());
  ASSERT_TRUE(r.min_instance);
  EXPECT_NEAR(r.min_instance->margin, 0.0, 1e-9);
}

TEST(Verify, DeterministicAcrossJobCounts) {
  const ConjectureSpec spec{ConjectureKind::sq_monotone, {2.0, 2.5}, 6, Source::internal_enumeration};
  const VerificationReport one = verify(spec, nullptr, {.jobs = 1, .full = true});
  for (int jobs : {2, 3, 8}) {
    const VerificationReport many = verify(spec, nullptr, {.jobs = jobs, .full = true, .batch = 7});
    EXPECT_EQ(one.instances, many.instances);
    EXPECT_EQ(one.tight, many.tight);
    ASSERT_EQ(one.violations.size(), many.violations.size());
    for (std::size_t i = 0; i < one.violations.size(); ++i) {
      EXPECT_EQ(one.violations[i].graph6, many.violations[i].graph6);
      EXPECT_EQ(one.violations[i].edge, many.violations[i].edge);
      EXPECT_EQ(one.violations[i].margin, many.violations[i].margin);
    }
    ASSERT_EQ(one.rows.size(), many.rows.size());
    for (std::size_t i = 0; i < one.rows.size(); ++i) EXPECT_EQ(one.rows[i].graph6, many.rows[i].graph6);
    EXPECT_EQ(one.min_instance->graph6, many.min_instance->graph6);
  }
}

TEST(Verify, StreamSourceModes) {
  std::istringstream bad("Bw\nB!\nBg\n");
  EXPECT_THROW(verify(stream_spec(ConjectureKind::hong, {2.0}), &bad), Error);
  std::istringstream lenient_in("Bw\nB!\nBg\nA?\n");
  VerifyOptions opt;
  opt.mode = Graph6Reader::Mode::lenient;
  const VerificationReport r = verify(stream_spec(ConjectureKind::hong, {2.0}), &lenient_in, opt);
  EXPECT_EQ(r.graphs_checked, 2u);
  // One malformed record and one disconnected graph.
  EXPECT_EQ(r.graphs_skipped, 2u);
  EXPECT_THROW(verify(stream_spec(ConjectureKind::hong, {2.0}), nullptr), Error);
}

TEST(Verify, SpecValidation) {
  EXPECT_THROW(verify({ConjectureKind::path_lower, {}, 4, Source::internal_enumeration}), Error);
  EXPECT_THROW(verify({ConjectureKind::path_lower, {0.0}, 4, Source::internal_enumeration}), Error);
  EXPECT_THROW(verify({ConjectureKind::even_floor, {3.0}, 4, Source::internal_enumeration}), Error);
  EXPECT_THROW(parse_conjecture_kind("goldbach"), Error);
}

TEST(EvenFloor, NoViolationsOnSmallOrders) {
  for (int n = 2; n <= 6; ++n) {
    for (int k : {2, 3}) EXPECT_TRUE(even_energy_floor(n, k, 2).clean()) << n << " " << k;
  }
  EXPECT_THROW(even_energy_floor(9, 2), Error);
  EXPECT_THROW(even_energy_floor(5, 1), Error);
}

TEST(TreeExtremal, StarAndPath) {
  const std::string star = canonical_graph6(make_family(Family::star, {7}));
  const std::string path = canonical_graph6(make_family(Family::path, {7}));
  const TreeExtremalReport low = tree_extremal(7, 1.5);
  EXPECT_EQ(low.argmin, std::vector<std::string>{star});
  EXPECT_EQ(low.argmax, std::vector<std::string>{path});
  EXPECT_EQ(low.trees, 11u);
  const TreeExtremalReport high = tree_extremal(7, 3.0);
  EXPECT_EQ(high.argmax, std::vector<std::string>{star});
  // Every tree has E_2 = 2(n - 1), so all of them tie.
  const TreeExtremalReport two = tree_extremal(7, 2.0);
  EXPECT_NEAR(two.t_p_min, 12.0, 1e-9);
  EXPECT_EQ(two.argmin.size(), 11u);
}

TEST(PropertySampling, AllChecksPass) {
  const PropertySample s = sample_spectral_properties(9, 300, 99);
  EXPECT_EQ(s.samples, 300u);
  EXPECT_EQ(s.failures(), 0u);
  const PropertySample again = sample_spectral_properties(9, 300, 99);
  EXPECT_EQ(again.failing_graph6, s.failing_graph6);
}
