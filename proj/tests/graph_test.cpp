//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#include "lgigen/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "lgigen/canon.hpp"
#include "lgigen/generate.hpp"
#include "oracles.hpp"

namespace lgigen {
namespace {

Graph triangle() { return Graph::from_edge_list(3, { { 0, 1 }, { 1, 2 }, { 0, 2 } }); }

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i)
    g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int n) {
  Graph g = path(n);
  g.add_edge(0, n - 1);
  return g;
}

std::vector<int> random_perm(int n, std::uint64_t seed) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  Rng rng(seed);
  shuffle(std::span(p), rng);
  return p;
}

TEST(GraphTest, FromEdgeList) {
  Graph k3 = triangle();
  EXPECT_EQ(k3.vertex_count(), 3);
  EXPECT_EQ(k3.edge_count(), 3);
  EXPECT_TRUE(k3.has_edge(2, 0));

  Graph k1 = Graph::from_edge_list(1, {});
  EXPECT_EQ(k1.vertex_count(), 1);
  EXPECT_EQ(k1.edge_count(), 0);

  EXPECT_THROW(Graph::from_edge_list(3, { { 0, 3 } }), GraphError);
  EXPECT_THROW(Graph::from_edge_list(3, { { 1, 1 } }), GraphError);

  Graph dup = Graph::from_edge_list(2, { { 0, 1 }, { 1, 0 }, { 0, 1 } });
  EXPECT_EQ(dup.edge_count(), 1);
}

TEST(GraphTest, DegreeSequence) {
  EXPECT_EQ(degree_sequence(triangle()), (std::vector<int> { 2, 2, 2 }));
  EXPECT_EQ(degree_sequence(Graph(1)), (std::vector<int> { 0 }));
  Graph star = Graph::from_edge_list(4, { { 0, 1 }, { 0, 2 }, { 0, 3 } });
  EXPECT_EQ(degree_sequence(star), (std::vector<int> { 3, 1, 1, 1 }));
}

TEST(GraphTest, Permute) {
  EXPECT_EQ(permute(triangle(), std::vector { 0, 1, 2 }), triangle());

  Graph p3 = path(3);
  Graph swapped = permute(p3, std::vector { 2, 1, 0 });
  EXPECT_EQ(swapped.edges(), (std::vector<Edge> { { 0, 1 }, { 1, 2 } }));

  EXPECT_THROW(permute(p3, std::vector { 0, 0, 1 }), GraphError);
  EXPECT_THROW(permute(p3, std::vector { 0, 1 }), GraphError);
}

TEST(GraphTest, PermutePreservesInvariants) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Graph g = random_graph({ 3, 10, 4, false, -1 }, seed);
    Graph h = permute(g, random_perm(g.vertex_count(), seed + 1000));

    auto dg = degree_sequence(g), dh = degree_sequence(h);
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    EXPECT_EQ(dg, dh);
    EXPECT_EQ(g.edge_count(), h.edge_count());
    EXPECT_EQ(connected_components(g).size(), connected_components(h).size());
    EXPECT_EQ(canonical_key(g), canonical_key(h));
    EXPECT_TRUE(is_isomorphic(g, h));
  }
}

TEST(GraphTest, ConnectedComponents) {
  EXPECT_EQ(connected_components(triangle()),
            (std::vector<std::vector<int>> { { 0, 1, 2 } }));
  EXPECT_EQ(connected_components(Graph(2)),
            (std::vector<std::vector<int>> { { 0 }, { 1 } }));
  Graph g = Graph::from_edge_list(4, { { 0, 1 }, { 1, 2 }, { 0, 2 } });
  EXPECT_EQ(connected_components(g),
            (std::vector<std::vector<int>> { { 0, 1, 2 }, { 3 } }));
  EXPECT_TRUE(connected_components(Graph()).empty());
}

TEST(GraphTest, CyclicVertices) {
  EXPECT_EQ(cyclic_vertices(triangle()), (std::vector { 0, 1, 2 }));
  EXPECT_TRUE(cyclic_vertices(path(3)).empty());

  Graph pendant = triangle();
  pendant.add_vertex();
  pendant.add_edge(0, 3);
  EXPECT_EQ(cyclic_vertices(pendant), (std::vector { 0, 1, 2 }));
  EXPECT_EQ(oracle::vertices_on_cycles(pendant), (std::set { 0, 1, 2 }));
}

TEST(GraphTest, CyclicVerticesMatchCycleEnumeration) {
  for (int n = 1; n <= 6; ++n) {
    for (const auto &g: enumerate_graphs(n)) {
      auto c = cyclic_vertices(g);
      std::set<int> got(c.begin(), c.end());
      EXPECT_EQ(got, oracle::vertices_on_cycles(g)) << "n=" << n;
    }
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = random_graph({ 2, 6, 4, false, 6 }, seed);
    auto c = cyclic_vertices(g);
    EXPECT_EQ(std::set<int>(c.begin(), c.end()), oracle::vertices_on_cycles(g));
  }
}

TEST(CanonTest, KeyIsRelabelingInvariant) {
  Graph k3 = triangle();
  std::vector<int> p { 0, 1, 2 };
  do {
    EXPECT_EQ(canonical_key(k3), canonical_key(permute(k3, p)));
  } while (std::next_permutation(p.begin(), p.end()));

  EXPECT_NE(canonical_key(cycle(4)), canonical_key(path(4)));
  EXPECT_FALSE(oracle::isomorphic_by_permutation(cycle(4), path(4)));
}

TEST(CanonTest, EmptyGraphSentinel) {
  EXPECT_EQ(canonical_key(Graph()).bytes, std::string(2, '\0'));
  EXPECT_TRUE(is_isomorphic(Graph(), Graph()));
  EXPECT_TRUE(canonical_labeling(Graph()).empty());
}

TEST(CanonTest, FourVertexClassesPartition) {
  std::set<CanonicalKey> keys;
  for (const auto &g: oracle::all_labeled_graphs(4))
    keys.insert(canonical_key(g));
  EXPECT_EQ(keys.size(), 11u);
}

// Equal keys iff a bijection exists, over every pair of labeled graphs on up
// to four vertices and every pair of 5-vertex classes' relabelings.
TEST(CanonTest, KeyIsCompleteInvariant) {
  for (int n = 1; n <= 4; ++n) {
    auto all = oracle::all_labeled_graphs(n);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size(); ++j) {
        ASSERT_EQ(canonical_key(all[i]) == canonical_key(all[j]),
                  oracle::isomorphic_by_permutation(all[i], all[j]));
      }
    }
  }

  auto all5 = oracle::all_labeled_graphs(5);
  for (std::size_t i = 0; i < all5.size(); i += 7) {
    for (std::size_t j = 0; j < all5.size(); j += 13) {
      ASSERT_EQ(canonical_key(all5[i]) == canonical_key(all5[j]),
                oracle::isomorphic_by_permutation(all5[i], all5[j]));
    }
  }
}

TEST(CanonTest, IsIsomorphicAgreesWithBruteForce) {
  Graph k3 = triangle();
  EXPECT_TRUE(is_isomorphic(k3, permute(k3, std::vector { 2, 0, 1 })));
  EXPECT_FALSE(is_isomorphic(k3, path(3)));

  for (int n = 1; n <= 5; ++n) {
    auto classes = enumerate_graphs(n);
    for (const auto &a: classes) {
      for (const auto &b: classes)
        ASSERT_EQ(is_isomorphic(a, b), oracle::isomorphic_by_permutation(a, b));
    }
  }
}

TEST(CanonTest, SymmetricGraphsStayTractable) {
  // Highly symmetric inputs that defeat refinement alone.
  Graph star(40);
  for (int v = 1; v < 40; ++v)
    star.add_edge(0, v);
  Graph dots(50);
  Graph triangles(45);
  for (int t = 0; t < 15; ++t) {
    triangles.add_edge(3 * t, 3 * t + 1);
    triangles.add_edge(3 * t + 1, 3 * t + 2);
    triangles.add_edge(3 * t, 3 * t + 2);
  }
  for (const Graph *g: { &star, &dots, &triangles }) {
    auto perm = random_perm(g->vertex_count(), 7);
    EXPECT_EQ(canonical_key(*g), canonical_key(permute(*g, perm)));
  }

  // Circulant graphs C(n; 1, 2) are vertex-transitive and 4-regular.
  for (int n: { 8, 12, 20 }) {
    Graph c(n);
    for (int v = 0; v < n; ++v) {
      c.add_edge(v, (v + 1) % n);
      c.add_edge(v, (v + 2) % n);
    }
    EXPECT_EQ(canonical_key(c), canonical_key(permute(c, random_perm(n, n))));
  }
}

TEST(CanonTest, CanonicalFormIsIsomorphic) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Graph g = random_graph({ 1, 9, 4, seed % 2 == 0, -1 }, seed);
    Graph c = canonical_form(g);
    if (g.vertex_count() <= 8) {
      EXPECT_TRUE(oracle::isomorphic_by_permutation(g, c));
    }
    EXPECT_EQ(canonical_form(permute(g, random_perm(g.vertex_count(), seed))),
              c);
  }
}

TEST(EnumerateTest, CountsMatchBruteForce) {
  const int expected[] = { 1, 1, 2, 4, 11, 34 };
  for (int n = 0; n <= 5; ++n) {
    auto classes = enumerate_graphs(n);
    EXPECT_EQ(classes.size(), static_cast<std::size_t>(expected[n]));
    if (n >= 1) {
      EXPECT_EQ(classes.size(), oracle::classes_by_permutation(n).size());
    }
  }
  EXPECT_EQ(enumerate_graphs(6).size(), 156u);
  EXPECT_THROW(enumerate_graphs(7), GraphError);
}

TEST(RandomGraphTest, SmallConnectedCases) {
  std::set<int> edge_counts;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = random_graph({ 3, 3, 2, true, -1 }, seed);
    ASSERT_EQ(g.vertex_count(), 3);
    ASSERT_TRUE(is_connected(g));
    ASSERT_LE(g.max_degree(), 2);
    edge_counts.insert(g.edge_count());
  }
  // n / 4 = 0 extra edges for n = 3: only paths.
  EXPECT_EQ(edge_counts, (std::set<int> { 2 }));

  std::set<int> with_extra;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Graph g = random_graph({ 3, 3, 2, true, 1 }, seed);
    ASSERT_TRUE(is_isomorphic(g, path(3)) || is_isomorphic(g, triangle()));
    with_extra.insert(g.edge_count());
  }
  EXPECT_EQ(with_extra, (std::set<int> { 2, 3 }));
}

TEST(RandomGraphTest, DeterministicAndCapped) {
  RandomGraphOptions opts { 6, 12, 4, true, -1 };
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Graph g = random_graph(opts, seed);
    EXPECT_EQ(g, random_graph(opts, seed));
    EXPECT_LE(g.max_degree(), 4);
    EXPECT_TRUE(is_connected(g));
    EXPECT_GE(g.vertex_count(), 6);
    EXPECT_LE(g.vertex_count(), 12);
  }
}

TEST(RandomGraphTest, InfeasibleOptions) {
  EXPECT_THROW(random_graph({ 5, 4, 3, true, -1 }, 0), GraphError);
  EXPECT_THROW(random_graph({ 3, 5, 0, false, -1 }, 0), GraphError);
  EXPECT_THROW(random_graph({ 3, 5, 1, true, -1 }, 0), GraphError);
}

}  // namespace
}  // namespace lgigen
