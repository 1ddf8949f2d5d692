//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_SCAFFOLD_HPP_
#define LGIGEN_SCAFFOLD_HPP_

#include <algorithm>
#include <span>
#include <vector>

#include "lgigen/canon.hpp"
#include "lgigen/graph.hpp"
#include "lgigen/metrics.hpp"

namespace lgigen {

namespace internal {
inline std::vector<Graph> split_induced(const Graph &g,
                                        const std::vector<int> &kept) {
  Graph sub = induced_subgraph(g, kept);
  std::vector<Graph> parts;
  for (const auto &comp: connected_components(sub))
    parts.push_back(induced_subgraph(sub, comp));
  return parts;
}
}  // namespace internal

/// Scaffolds: the subgraph induced by cyclic vertices and their acyclic
/// neighbors, one graph per connected component. Empty for acyclic graphs.
inline std::vector<Graph> scaffold_of(const Graph &g) {
  auto cyclic = cyclic_vertices(g);
  if (cyclic.empty())
    return {};

  std::vector<char> keep(g.vertex_count(), 0);
  for (int v: cyclic) {
    keep[v] = 1;
    for (int w: g.neighbors(v))
      keep[w] = 1;
  }
  std::vector<int> kept;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (keep[v])
      kept.push_back(v);
  }
  return internal::split_induced(g, kept);
}

/// Ring systems: cyclic vertices joined by ring (non-bridge) edges, one graph
/// per connected component. A bridge between two cyclic vertices separates
/// ring systems just as a longer acyclic linker does.
inline std::vector<Graph> ring_system_of(const Graph &g) {
  auto cyclic = cyclic_vertices(g);
  if (cyclic.empty())
    return {};
  Graph rings(g.vertex_count());
  auto cut = bridges(g);
  for (const auto &e: g.edges()) {
    if (!std::binary_search(cut.begin(), cut.end(), e))
      rings.add_edge(e.first, e.second);
  }
  return internal::split_induced(rings, cyclic);
}

inline std::vector<CanonicalKey> graph_keys(const Graph &g) {
  return { canonical_key(g) };
}

inline std::vector<CanonicalKey> scaffold_keys(const Graph &g) {
  std::vector<CanonicalKey> keys;
  for (const auto &s: scaffold_of(g))
    keys.push_back(canonical_key(s));
  return keys;
}

inline std::vector<CanonicalKey> ring_system_keys(const Graph &g) {
  std::vector<CanonicalKey> keys;
  for (const auto &r: ring_system_of(g))
    keys.push_back(canonical_key(r));
  return keys;
}

struct UniqueCounts {
  KeySet graphs, scaffolds, ring_systems;
};

inline UniqueCounts unique_counts(std::span<const Graph> graphs) {
  UniqueCounts out;
  for (const auto &g: graphs) {
    out.graphs.insert(canonical_key(g));
    for (auto &k: scaffold_keys(g))
      out.scaffolds.insert(std::move(k));
    for (auto &k: ring_system_keys(g))
      out.ring_systems.insert(std::move(k));
  }
  return out;
}

}  // namespace lgigen

#endif  // LGIGEN_SCAFFOLD_HPP_
