#include <gtest/gtest.h>

#include <random>
#include <stdexcept>
#include <sstream>

#include "saatsp/errors.hpp"
#include "saatsp/graph_algorithms.hpp"
#include "saatsp/instances.hpp"
#include "test_support.hpp"

namespace saatsp {
namespace {

using testing::brute_min_cut;
using testing::dicycle;
using testing::floyd_warshall;

TEST(Rational, CanonicalFormAndPrinting) {
  EXPECT_EQ(Rational(6, 4).to_string(), "3/2");
  EXPECT_EQ(Rational(-6, -4), Rational(3, 2));
  EXPECT_EQ(Rational(4, -2).to_string(), "-2/1");
  EXPECT_EQ(Rational(0).to_string(), "0/1");
  EXPECT_EQ(Rational::parse("10/4"), Rational(5, 2));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational(2, 3).to_decimal(6), "0.666667");
  EXPECT_EQ(Rational(-1, 8).to_decimal(2), "-0.13");
  EXPECT_EQ(Rational(27, 26).to_decimal(6), "1.038462");
}

TEST(Rational, RejectsMalformedInput) {
  for (const char* s : {"", "1/", "/2", "1/0", "a", "1.5", "1//2", "--1"}) {
    EXPECT_THROW(Rational::parse(s), Error) << s;
  }
  EXPECT_THROW(Rational(1, 0), Error);
  EXPECT_THROW(Rational(1) / Rational(0), std::domain_error);
}

TEST(Rational, ReciprocalRoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    long a = d(rng), b = d(rng);
    if (a == 0 || b == 0) continue;
    EXPECT_EQ(Rational(a, b) * Rational(b, a), Rational(1));
    EXPECT_EQ(Rational(a, b).hash(), (Rational(2 * a, 2 * b)).hash());
  }
}

TEST(EdgeSet, CanonicalAndOrdered) {
  EdgeSet a{3, 1, 2, 1};
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a, (EdgeSet{1, 2, 3}));
  EXPECT_EQ(a.to_string(), "{1,2,3}");
  EXPECT_TRUE(EdgeSet{2}.subset_of(a));
  EXPECT_FALSE(EdgeSet{4}.subset_of(a));
  EXPECT_TRUE(a.intersects(EdgeSet{3, 9}));
  EXPECT_EQ(a.with(0), (EdgeSet{0, 1, 2, 3}));
  EXPECT_EQ(a.without(2), (EdgeSet{1, 3}));
  EXPECT_TRUE(EdgeSet{9} < (EdgeSet{0, 1}));
  EXPECT_TRUE((EdgeSet{0, 2}) < (EdgeSet{1, 2}));
}

TEST(Digraph, TextRoundTrip) {
  const Digraph g = ladder(3).graph;
  const std::string text = digraph_to_text(g);
  EXPECT_EQ(text.substr(0, text.find('\n')), "12 16");
  EXPECT_EQ(digraph_from_text(text), g);
  Digraph h(3);
  h.add_edge(0, 1, Rational(7, 3));
  h.add_edge(1, 2, 0);
  h.add_edge(2, 0, Rational(1, 2));
  EXPECT_EQ(digraph_from_text(digraph_to_text(h)), h);
}

TEST(Digraph, RejectsBadText) {
  EXPECT_THROW(digraph_from_text("2 1\n0 0 1/1\n"), Error);
  EXPECT_THROW(digraph_from_text("2 1\n0 5 1/1\n"), Error);
  EXPECT_THROW(digraph_from_text("2 2\n0 1 1/1\n"), Error);
  EXPECT_THROW(digraph_from_text("2 1\n0 1 -1/1\n"), Error);
  EXPECT_THROW(digraph_from_text("x"), Error);
}

TEST(StrongConnectivity, Examples) {
  EXPECT_TRUE(is_strongly_connected(Digraph(1)));
  Digraph two(2);
  two.add_edge(0, 1, 1);
  EXPECT_FALSE(is_strongly_connected(two));
  const GoodInstance l = ladder(2);
  for (std::size_t j : l.decomposition.witness) {
    EXPECT_TRUE(is_strongly_connected_without(l.graph, EdgeSet(l.decomposition.cycles[j])));
  }
  EXPECT_FALSE(is_strongly_connected_without(l.graph, EdgeSet(l.decomposition.cycles[0])));
}

TEST(StrongConnectivity, MatchesReachabilityOracle) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Digraph g = testing::random_strong_digraph(n, trial % 9, rng);
    std::vector<bool> removed(g.edge_count(), false);
    std::vector<EdgeId> gone;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng() % 3 == 0) {
        removed[e] = true;
        gone.push_back(e);
      }
    }
    EXPECT_EQ(is_strongly_connected_without(g, EdgeSet(gone)), testing::reachable_all(g, removed));
  }
}

TEST(MetricCompletion, DicycleDistances) {
  const Digraph h = metric_completion(dicycle(3));
  ASSERT_EQ(h.edge_count(), 6u);
  EXPECT_EQ(h.edge(complete_edge_id(3, 0, 1)).cost, Rational(1));
  EXPECT_EQ(h.edge(complete_edge_id(3, 1, 0)).cost, Rational(2));
  EXPECT_EQ(h.edge(complete_edge_id(3, 2, 0)).cost, Rational(1));
}

TEST(MetricCompletion, LadderSpotValues) {
  const Digraph h = metric_completion(ladder(2).graph);
  EXPECT_EQ(h.vertex_count(), 9u);
  EXPECT_EQ(h.edge_count(), 72u);
  // Vertex (row, col) = row*3 + col; the left column runs top -> middle -> bottom.
  EXPECT_EQ(h.edge(complete_edge_id(9, 6, 0)).cost, Rational(2));
  EXPECT_EQ(h.edge(complete_edge_id(9, 6, 3)).cost, Rational(1));
  EXPECT_EQ(h.edge(complete_edge_id(9, 0, 6)).cost, Rational(6));
}

TEST(MetricCompletion, MatchesFloydWarshallAndTriangleInequality) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const Digraph g = testing::random_strong_digraph(n, 2 * n, rng, 9);
    const Digraph h = metric_completion(g);
    const auto d = floyd_warshall(g);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = 0; v < n; ++v) {
        if (u == v) continue;
        const Rational c = h.edge(complete_edge_id(n, u, v)).cost;
        EXPECT_EQ(c, *d[u][v]);
        for (VertexId w = 0; w < n; ++w) {
          if (w == u || w == v) continue;
          EXPECT_LE(c, h.edge(complete_edge_id(n, u, w)).cost + h.edge(complete_edge_id(n, w, v)).cost);
        }
      }
    }
    for (const Edge& e : g.edges()) EXPECT_LE(h.edge(complete_edge_id(n, e.tail, e.head)).cost, e.cost);
  }
}

TEST(MetricCompletion, RejectsDisconnected) {
  Digraph g(2);
  g.add_edge(0, 1, 1);
  try {
    metric_completion(g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotStronglyConnected);
  }
}

TEST(MinCut, Examples) {
  const Digraph c = dicycle(5);
  EXPECT_EQ(min_directed_cut(c, std::vector<Rational>(5, 1)).value, Rational(1));
  const Digraph l = ladder(2).graph;
  const std::vector<Rational> half(l.edge_count(), Rational(1, 2));
  // The bottom-middle vertex has a single out-edge.
  EXPECT_EQ(min_directed_cut(l, half).value, Rational(1, 2));
  EXPECT_EQ(brute_min_cut(l, half), Rational(1, 2));
  std::vector<Rational> base(l.edge_count(), Rational(1));
  for (EdgeId e = 8; e < 12; ++e) base[e] = Rational(1, 2);
  EXPECT_EQ(min_directed_cut(l, base).value, Rational(1));
  EXPECT_EQ(brute_min_cut(l, base), Rational(1));
  std::vector<Rational> neg(5, 1);
  neg[2] = -1;
  try {
    min_directed_cut(c, neg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NegativeWeight);
  }
}

TEST(MinCut, MatchesEnumerationUpToTwelveVertices) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(0, 6);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const Digraph g = testing::random_strong_digraph(n, n + trial % 5, rng);
    std::vector<Rational> w(g.edge_count());
    for (auto& x : w) x = Rational(num(rng), 3);
    std::vector<CutSide> sides{{}, {VertexId{0}, std::nullopt}, {std::nullopt, VertexId{1}},
                               {VertexId{0}, VertexId{1}}};
    for (const CutSide& side : sides) {
      const Rational expect = brute_min_cut(g, w, side);
      const DirectedCut got = min_directed_cut(g, w, side);
      EXPECT_EQ(got.value, expect);
      EXPECT_EQ(min_directed_cut_enumerated(g, w, side, 22).value, expect);
      Rational check(0);
      std::vector<bool> in(n, false);
      for (VertexId v : got.source_side) in[v] = true;
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (in[g.edge(e).tail] && !in[g.edge(e).head]) check += w[e];
      }
      EXPECT_EQ(check, got.value);
      const auto below = find_cut_below(g, w, expect + Rational(1, 7), side);
      ASSERT_TRUE(below.has_value());
      EXPECT_LT(below->value, expect + Rational(1, 7));
      EXPECT_FALSE(find_cut_below(g, w, expect, side).has_value());
    }
  }
}

TEST(MinCut, EnumerationHandlesNegativeWeights) {
  const Digraph c = dicycle(4);
  std::vector<Rational> w{1, -2, 1, 1};
  EXPECT_EQ(min_directed_cut_enumerated(c, w, {}, 22).value, Rational(-2));
  EXPECT_THROW(min_directed_cut_enumerated(c, w, {}, 3), Error);
}

TEST(MaxFlow, LadderUnitCapacities) {
  const Digraph l = ladder(2).graph;
  const std::vector<Rational> w(l.edge_count(), 1);
  EXPECT_EQ(max_flow(l, w, 3, 5), Rational(2));
  const Rational limit(1);
  EXPECT_EQ(max_flow(l, w, 3, 5, &limit), Rational(1));
}

}  // namespace
}  // namespace saatsp
