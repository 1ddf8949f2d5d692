//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_GENERATE_HPP_
#define LGIGEN_GENERATE_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "lgigen/canon.hpp"
#include "lgigen/graph.hpp"
#include "lgigen/random.hpp"

namespace lgigen {

constexpr int kMaxEnumerationOrder = 6;

/// One representative per isomorphism class of simple graphs on n vertices,
/// in order of first appearance when edge subsets are visited as bitmasks
/// over the pairs (0,1), (0,2), (1,2), (0,3), ...
///
/// \throws GraphError if n is negative or exceeds kMaxEnumerationOrder.
inline std::vector<Graph> enumerate_graphs(int n) {
  if (n < 0 || n > kMaxEnumerationOrder) {
    throw GraphError("enumerate_graphs supports 0 <= n <= "
                     + std::to_string(kMaxEnumerationOrder));
  }

  std::vector<Edge> pairs;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i)
      pairs.emplace_back(i, j);
  }

  std::set<CanonicalKey> seen;
  std::vector<Graph> result;
  const std::uint32_t limit = std::uint32_t { 1 } << pairs.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    Graph g(n);
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (mask & (std::uint32_t { 1 } << b))
        g.add_edge(pairs[b].first, pairs[b].second);
    }
    if (seen.insert(canonical_key(g)).second)
      result.push_back(std::move(g));
  }
  return result;
}

struct RandomGraphOptions {
  int min_vertices = 6;
  int max_vertices = 12;
  int max_degree = 4;
  bool connected = true;
  // Upper bound on edges added beyond the spanning tree (connected) or in
  // total (disconnected). Negative selects n / 4 and n respectively.
  int max_extra_edges = -1;
};

/// Seeded random simple graph with every degree <= max_degree.
///
/// The vertex count is uniform in [min_vertices, max_vertices]. Connected
/// graphs start from a random degree-capped spanning tree (vertices are
/// attached in random order to a uniformly chosen earlier vertex with spare
/// capacity); a uniform number of extra edges in [0, max_extra_edges] is then
/// drawn from the pairs that keep both endpoints under the cap.
///
/// \throws GraphError on infeasible options.
inline Graph random_graph(const RandomGraphOptions &opts, std::uint64_t seed) {
  if (opts.min_vertices < 0 || opts.min_vertices > opts.max_vertices)
    throw GraphError("random_graph: empty vertex-count range");
  if (opts.max_degree < 1)
    throw GraphError("random_graph: max_degree must be >= 1");
  if (opts.connected && opts.max_degree == 1 && opts.min_vertices > 2)
    throw GraphError(
        "random_graph: connected graphs with more than 2 vertices need "
        "max_degree >= 2");

  Rng rng(seed);
  int n = uniform_int(rng, opts.min_vertices, opts.max_vertices);
  if (opts.connected && opts.max_degree == 1)
    n = std::min(n, 2);

  Graph g(n);
  if (opts.connected && n > 1) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle(std::span(order), rng);

    std::vector<int> open { order[0] };
    for (int i = 1; i < n; ++i) {
      std::size_t k = uniform_below(rng, open.size());
      int parent = open[k];
      g.add_edge(parent, order[i]);
      if (g.degree(parent) >= opts.max_degree) {
        open[k] = open.back();
        open.pop_back();
      }
      if (g.degree(order[i]) < opts.max_degree)
        open.push_back(order[i]);
    }
  }

  int extra_max = opts.max_extra_edges;
  if (extra_max < 0)
    extra_max = opts.connected ? n / 4 : n;
  const int extra = extra_max > 0 ? uniform_int(rng, 0, extra_max) : 0;

  for (int added = 0; added < extra; ++added) {
    std::vector<Edge> candidates;
    for (int u = 0; u < n; ++u) {
      if (g.degree(u) >= opts.max_degree)
        continue;
      for (int v = u + 1; v < n; ++v) {
        if (g.degree(v) < opts.max_degree && !g.has_edge(u, v))
          candidates.emplace_back(u, v);
      }
    }
    if (candidates.empty())
      break;
    auto [u, v] = candidates[uniform_below(rng, candidates.size())];
    g.add_edge(u, v);
  }
  return g;
}

}  // namespace lgigen

#endif  // LGIGEN_GENERATE_HPP_
