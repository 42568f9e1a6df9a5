#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "saatsp/certificates.hpp"
#include "saatsp/errors.hpp"
#include "saatsp/instances.hpp"
#include "saatsp/relaxations.hpp"
#include "saatsp/sa_lift.hpp"
#include "test_support.hpp"

namespace saatsp {
namespace {

using testing::dicycle;
using testing::indicator;

const BuildOptions kEnum{CutMode::Enumerated, kDefaultMaxEnumN};
const BuildOptions kSep{CutMode::Separated, kDefaultMaxEnumN};

std::map<Family, std::size_t> family_counts(const ConstraintSystem& cs) {
  std::map<Family, std::size_t> out;
  for (const auto& c : cs.constraints) ++out[c.tag.family];
  return out;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::BadSpec;
}

std::vector<Rational> singleton_values(const MomentVector& y) { return singletons(y); }

TEST(Build, TriangleCounts) {
  const ConstraintSystem dfj = build_dfj(dicycle(3), kEnum);
  auto c = family_counts(dfj);
  EXPECT_EQ(c[Family::CutIn] + c[Family::CutOut], 12u);
  EXPECT_EQ(c[Family::DegreeIn] + c[Family::DegreeOut], 12u);
  EXPECT_EQ(c[Family::LowerBound] + c[Family::UpperBound], 6u);
  EXPECT_EQ(dfj.constraints.size(), 30u);

  const ConstraintSystem bal = build_balanced(dicycle(3), kEnum);
  c = family_counts(bal);
  EXPECT_EQ(c[Family::CutIn] + c[Family::CutOut], 12u);
  EXPECT_EQ(c[Family::Balance], 6u);
  EXPECT_EQ(c[Family::DegreeIn] + c[Family::DegreeOut], 0u);

  const ConstraintSystem sep = build_dfj(dicycle(3), kSep);
  c = family_counts(sep);
  EXPECT_EQ(c[Family::CutIn] + c[Family::CutOut], 0u);
  EXPECT_EQ(sep.cuts.size(), 2u);
}

TEST(Build, PathCutCounts) {
  // Cut-in rows range over nonempty S avoiding p, cut-out rows over nonempty S avoiding q.
  Digraph g = dicycle(4);
  const ConstraintSystem cs = build_path(g, 0, 3, kEnum);
  auto c = family_counts(cs);
  EXPECT_EQ(c[Family::CutIn], 7u);
  EXPECT_EQ(c[Family::CutOut], 7u);
  for (const auto& row : cs.constraints) {
    if (row.tag.family == Family::CutIn) {
      EXPECT_EQ(std::count(row.tag.vertices.begin(), row.tag.vertices.end(), 0u), 0);
    }
  }
}

TEST(Build, Errors) {
  EXPECT_EQ(kind_of([] { build_dfj(Digraph(1)); }), ErrorKind::BadParams);
  EXPECT_EQ(kind_of([] { build_path(dicycle(3), 1, 1); }), ErrorKind::BadParams);
  BuildOptions tight{CutMode::Enumerated, 3};
  EXPECT_EQ(kind_of([&] { build_dfj(dicycle(4), tight); }), ErrorKind::TooLargeToEnumerate);
  EXPECT_NO_THROW(build_dfj(dicycle(4), BuildOptions{CutMode::Separated, 3}));
}

TEST(Feasibility, Examples) {
  const Digraph tri = dicycle(3);
  EXPECT_TRUE(is_feasible_point(build_dfj(tri, kEnum), std::vector<Rational>(3, 1)));
  EXPECT_FALSE(is_feasible_point(build_balanced(tri, kEnum), std::vector<Rational>(3, 0)));

  const GoodInstance l2 = ladder(2);
  const auto y0 = singleton_values(y_balanced(l2.graph, l2.decomposition, {}, 0));
  EXPECT_TRUE(is_feasible_point(build_balanced(l2.graph, kEnum), y0));
  EXPECT_TRUE(is_feasible_point(build_balanced(l2.graph, kSep), y0));

  const SplitInstance s2 = split(l2.graph, l2.decomposition);
  // |F| = 2 = t+2 at t = 0, so z^0_0 exists on the ladder-split(2) instance.
  const auto z0 = singleton_values(z_dfj(s2, {}, 0));
  EXPECT_TRUE(is_feasible_point(build_dfj(s2.graph, kEnum), z0));

  const GoodInstance cgk = cgk_L(2, 3);
  const std::vector<Rational> half(cgk.graph.edge_count(), Rational(1, 2));
  EXPECT_TRUE(is_feasible_point(build_balanced(cgk.graph, kSep), half));

  Digraph pq(2);
  pq.add_edge(0, 1, 1);
  EXPECT_TRUE(is_feasible_point(build_path(pq, 0, 1, kEnum), std::vector<Rational>{1}));
  Digraph back(2);
  back.add_edge(0, 1, 1);
  back.add_edge(1, 0, 1);
  EXPECT_FALSE(is_feasible_point(build_path(back, 0, 1, kEnum), std::vector<Rational>{1, Rational(1, 2)}));
}

TEST(Feasibility, HamiltonianIndicatorsAreFeasible) {
  for (std::size_t l = 1; l <= 4; ++l) {
    const GoodInstance inst = ladder(l);
    const SplitInstance s = split(inst.graph, inst.decomposition);
    for (std::size_t j : s.witness) {
      const auto x = indicator(s.graph.edge_count(), tour(s, j));
      EXPECT_TRUE(is_feasible_point(build_dfj(s.graph, kSep), x));
      EXPECT_TRUE(is_feasible_point(build_balanced(s.graph, kSep), x));
      // Dropping the tour edge out of the return-path endpoint gives a Hamiltonian dipath.
      const Digraph& g = s.graph;
      const EdgeSet t = tour(s, j);
      const EdgeId drop = t[0];
      const auto path_x = indicator(g.edge_count(), t.without(drop));
      EXPECT_TRUE(is_feasible_point(build_path(g, g.edge(drop).head, g.edge(drop).tail, kSep), path_x));
      if (g.vertex_count() <= 12) {
        EXPECT_TRUE(is_feasible_point(build_path(g, g.edge(drop).head, g.edge(drop).tail, kEnum), path_x));
      }
    }
  }
}

TEST(Feasibility, EnumeratedAndSeparatedAgree) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<long> num(0, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 11;
    const Digraph g = testing::random_strong_digraph(n, n, rng);
    std::vector<Rational> x(g.edge_count());
    for (auto& v : x) v = Rational(num(rng), 4);
    for (Relaxation r : {Relaxation::Dfj, Relaxation::Balanced, Relaxation::Path}) {
      const ConstraintSystem e = build_system(r, g, kEnum, 0, 1);
      const ConstraintSystem s = build_system(r, g, kSep, 0, 1);
      EXPECT_EQ(is_feasible_point(e, x), is_feasible_point(s, x)) << relaxation_name(r) << " n=" << n;
    }
    // Hamiltonian ring is feasible everywhere.
    std::vector<Rational> ring(g.edge_count(), Rational(0));
    for (std::size_t i = 0; i < n; ++i) ring[i] = 1;
    EXPECT_TRUE(is_feasible_point(build_dfj(g, kEnum), ring));
    EXPECT_TRUE(is_feasible_point(build_dfj(g, kSep), ring));
  }
}

TEST(Lp, Triangle) {
  const Digraph tri = dicycle(3);
  const LpResult r = solve_lp_exact(build_dfj(tri, kEnum), tri.costs());
  EXPECT_EQ(r.value, Rational(3));
  EXPECT_EQ(solve_lp_exact(build_dfj(metric_completion(tri), kSep), metric_completion(tri).costs()).value,
            Rational(3));
}

TEST(Lp, SolutionIsFeasibleAndAttainsValue) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + trial % 5;
    const Digraph h = metric_completion(testing::random_strong_digraph(n, n, rng));
    for (Relaxation r : {Relaxation::Dfj, Relaxation::Balanced, Relaxation::Path}) {
      const LpResult e = solve_lp_exact(build_system(r, h, kEnum, 0, 1), h.costs());
      const LpResult s = solve_lp_exact(build_system(r, h, kSep, 0, 1), h.costs());
      EXPECT_EQ(e.value, s.value);
      Rational v(0);
      for (EdgeId i = 0; i < h.edge_count(); ++i) v += h.edge(i).cost * e.x[i];
      EXPECT_EQ(v, e.value);
      EXPECT_TRUE(is_feasible_point(build_system(r, h, kEnum, 0, 1), e.x));
      EXPECT_TRUE(is_feasible_point(build_system(r, h, kEnum, 0, 1), s.x));
    }
    const auto dfj = solve_lp_exact(build_dfj(h, kSep), h.costs()).value;
    const auto bal = solve_lp_exact(build_balanced(h, kSep), h.costs()).value;
    EXPECT_EQ(dfj, bal);
  }
}

TEST(Lp, LadderCompletion) {
  const GoodInstance l2 = ladder(2);
  const Digraph h = metric_completion(l2.graph);
  const Rational bal = solve_lp_exact(build_balanced(h, kSep), h.costs()).value;
  const Rational dfj = solve_lp_exact(build_dfj(h, kSep), h.costs()).value;
  EXPECT_LE(bal, Rational(10));
  EXPECT_EQ(bal, dfj);
  EXPECT_EQ(bal, solve_lp_exact(build_balanced(h, kEnum), h.costs()).value);
}

TEST(Lp, Infeasible) {
  Digraph star(3);
  star.add_edge(0, 1, 1);
  star.add_edge(1, 0, 1);
  star.add_edge(0, 2, 1);
  star.add_edge(2, 0, 1);
  EXPECT_EQ(kind_of([&] { solve_lp_exact(build_dfj(star, kEnum), star.costs()); }), ErrorKind::Infeasible);
  EXPECT_NO_THROW(solve_lp_exact(build_balanced(star, kEnum), star.costs()));
}

TEST(ExtendByZeros, LadderToCompletion) {
  const GoodInstance l2 = ladder(2);
  const Digraph h = metric_completion(l2.graph);
  const MomentVector y = y_balanced(l2.graph, l2.decomposition, {}, 1);
  const ConstraintSystem host = build_balanced(h, kSep);
  const auto emb = embed_edges(l2.graph, h);
  const MomentVector ext = extend_by_zeros(y, emb, host);
  EXPECT_EQ(ext.ground_size(), h.edge_count());
  EXPECT_EQ(objective_value(ext, h.costs()), objective_value(y, l2.graph.costs()));
  EXPECT_TRUE(check_direct(ext, host, 1).feasible);
  for (const auto& [s, v] : ext.entries()) {
    if (s.empty()) continue;
    std::vector<EdgeId> pre;
    for (EdgeId e : s) {
      auto it = std::find(emb.begin(), emb.end(), e);
      ASSERT_NE(it, emb.end());
      pre.push_back(static_cast<EdgeId>(it - emb.begin()));
    }
    EXPECT_EQ(v, y.get(EdgeSet(pre)));
  }
}

TEST(ExtendByZeros, IdentityWhenHostEqualsGraph) {
  const GoodInstance l2 = ladder(2);
  const MomentVector y = y_balanced(l2.graph, l2.decomposition, {}, 1);
  const ConstraintSystem cs = build_balanced(l2.graph, kSep);
  const MomentVector ext = extend_by_zeros(y, embed_edges(l2.graph, l2.graph), cs);
  for (const auto& [s, v] : y.entries()) EXPECT_EQ(ext.get(s), v);
}

TEST(ExtendByZeros, SupportViolation) {
  Digraph host(3);
  for (VertexId u = 0; u < 3; ++u)
    for (VertexId v = 0; v < 3; ++v)
      if (u != v) host.add_edge(u, v, 1);
  Digraph g(3);
  g.add_edge(0, 1, 1);
  g.add_edge(1, 0, 1);
  MomentVector y(0, 2, true);
  y.set({}, 1);
  y.set({0}, 1);
  y.set({1}, 1);
  for (CutMode mode : {CutMode::Enumerated, CutMode::Separated}) {
    const ConstraintSystem cs = build_dfj(host, BuildOptions{mode, kDefaultMaxEnumN});
    EXPECT_EQ(kind_of([&] { extend_by_zeros(y, embed_edges(g, host), cs); }), ErrorKind::SupportViolation);
  }
}

TEST(WriteLp, TriangleText) {
  std::ostringstream os;
  const Digraph tri = dicycle(3);
  write_lp(os, build_dfj(tri, kEnum), tri.costs());
  const std::string text = os.str();
  for (const char* s : {"Minimize", "Subject To", "Bounds", "End", "\\ exact:"}) {
    EXPECT_NE(text.find(s), std::string::npos) << s;
  }
  std::ostringstream none;
  EXPECT_EQ(kind_of([&] { write_lp(none, build_dfj(tri, kSep), tri.costs()); }), ErrorKind::BadParams);
}

}  // namespace
}  // namespace saatsp
