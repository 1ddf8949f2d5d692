//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_GRAPH_HPP_
#define LGIGEN_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lgigen/error.hpp"

namespace lgigen {

using Edge = std::pair<int, int>;

/// Undirected, unweighted, simple graph on vertices 0..n-1.
///
/// Adjacency lists are kept sorted, so two graphs compare equal iff they have
/// the same vertex count and the same labeled edge set.
class Graph {
public:
  Graph() = default;

  explicit Graph(int vertex_count): adj_(check_count(vertex_count)) { }

  /// Builds a graph from vertex pairs. Duplicate pairs (in either
  /// orientation) are merged.
  ///
  /// \throws GraphError on an out-of-range endpoint or a self-loop.
  static Graph from_edge_list(int n, std::span<const Edge> pairs) {
    Graph g(n);
    for (auto [u, v]: pairs)
      g.add_edge(u, v);
    return g;
  }

  static Graph from_edge_list(int n, std::initializer_list<Edge> pairs) {
    return from_edge_list(n, std::span(pairs.begin(), pairs.size()));
  }

  int vertex_count() const { return static_cast<int>(adj_.size()); }

  int edge_count() const { return edge_count_; }

  bool empty() const { return adj_.empty(); }

  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  std::span<const int> neighbors(int v) const { return adj_[v]; }

  bool has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
      return false;
    const auto &a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  /// Adds edge {u, v}. Returns false if the edge already existed.
  bool add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count()) {
      throw GraphError("edge (" + std::to_string(u) + "," + std::to_string(v)
                       + ") has an endpoint outside [0,"
                       + std::to_string(vertex_count()) + ")");
    }
    if (u == v)
      throw GraphError("self-loop on vertex " + std::to_string(u));

    auto &au = adj_[u];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v)
      return false;
    au.insert(it, v);

    auto &av = adj_[v];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++edge_count_;
    return true;
  }

  int add_vertex() {
    adj_.emplace_back();
    return vertex_count() - 1;
  }

  /// All edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (int u = 0; u < vertex_count(); ++u) {
      for (int v: adj_[u]) {
        if (u < v)
          result.emplace_back(u, v);
      }
    }
    return result;
  }

  int max_degree() const {
    int d = 0;
    for (const auto &a: adj_)
      d = std::max(d, static_cast<int>(a.size()));
    return d;
  }

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  static std::size_t check_count(int n) {
    if (n < 0)
      throw GraphError("negative vertex count");
    return static_cast<std::size_t>(n);
  }

  std::vector<std::vector<int>> adj_;
  int edge_count_ = 0;
};

inline std::vector<int> degree_sequence(const Graph &g) {
  std::vector<int> deg(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    deg[v] = g.degree(v);
  return deg;
}

inline bool is_permutation_of_vertices(std::span<const int> perm, int n) {
  if (static_cast<int>(perm.size()) != n)
    return false;
  std::vector<char> seen(n, 0);
  for (int p: perm) {
    if (p < 0 || p >= n || seen[p])
      return false;
    seen[p] = 1;
  }
  return true;
}

/// Relabels vertices: edge (u, v) becomes (perm[u], perm[v]).
///
/// \throws GraphError if perm is not a bijection on [0, n).
inline Graph permute(const Graph &g, std::span<const int> perm) {
  if (!is_permutation_of_vertices(perm, g.vertex_count()))
    throw GraphError("permutation is not a bijection on the vertex set");

  Graph h(g.vertex_count());
  for (auto [u, v]: g.edges())
    h.add_edge(perm[u], perm[v]);
  return h;
}

/// Induced subgraph on `vertices`; vertex vertices[i] becomes vertex i.
inline Graph induced_subgraph(const Graph &g, std::span<const int> vertices) {
  std::vector<int> index(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    index[vertices[i]] = i;

  Graph h(static_cast<int>(vertices.size()));
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    for (int w: g.neighbors(vertices[i])) {
      if (index[w] > i)
        h.add_edge(i, index[w]);
    }
  }
  return h;
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
inline std::vector<std::vector<int>> connected_components(const Graph &g) {
  const int n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> result;
  std::vector<int> stack;

  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;

    const int id = static_cast<int>(result.size());
    auto &members = result.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (int w: g.neighbors(v)) {
        if (comp[w] < 0) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
  }
  return result;
}

inline bool is_connected(const Graph &g) {
  return connected_components(g).size() <= 1;
}

/// Edges that are bridges (their removal disconnects their endpoints),
/// as (u, v) with u < v.
inline std::vector<Edge> bridges(const Graph &g) {
  const int n = g.vertex_count();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<Edge> result;
  int timer = 0;

  // Iterative Tarjan lowlink; frame = (vertex, parent, next neighbor index).
  struct Frame {
    int v, parent;
    std::size_t next;
  };
  std::vector<Frame> stack;

  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0)
      continue;
    disc[root] = low[root] = timer++;
    stack.push_back({ root, -1, 0 });

    while (!stack.empty()) {
      Frame &f = stack.back();
      auto nb = g.neighbors(f.v);
      if (f.next < nb.size()) {
        int w = nb[f.next++];
        if (w == f.parent)
          continue;
        if (disc[w] >= 0) {
          low[f.v] = std::min(low[f.v], disc[w]);
        } else {
          disc[w] = low[w] = timer++;
          stack.push_back({ w, f.v, 0 });
        }
        continue;
      }

      const int v = f.v, parent = f.parent;
      stack.pop_back();
      if (parent >= 0) {
        low[parent] = std::min(low[parent], low[v]);
        if (low[v] > disc[parent])
          result.emplace_back(std::min(v, parent), std::max(v, parent));
      }
    }
  }

  std::sort(result.begin(), result.end());
  return result;
}

/// Vertices lying on at least one cycle, ascending.
///
/// A vertex is cyclic iff it is an endpoint of a non-bridge edge; for simple
/// graphs this is the vertex set covered by a minimum cycle basis.
inline std::vector<int> cyclic_vertices(const Graph &g) {
  auto br = bridges(g);
  std::vector<char> cyclic(g.vertex_count(), 0);
  for (auto [u, v]: g.edges()) {
    if (!std::binary_search(br.begin(), br.end(), Edge(u, v)))
      cyclic[u] = cyclic[v] = 1;
  }

  std::vector<int> result;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (cyclic[v])
      result.push_back(v);
  }
  return result;
}

inline bool is_acyclic(const Graph &g) {
  return g.edge_count() + static_cast<int>(connected_components(g).size())
         == g.vertex_count();
}

}  // namespace lgigen

#endif  // LGIGEN_GRAPH_HPP_
