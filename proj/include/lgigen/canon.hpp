//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_CANON_HPP_
#define LGIGEN_CANON_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "lgigen/graph.hpp"

namespace lgigen {

/// Byte string identifying an isomorphism class: equal keys iff isomorphic.
struct CanonicalKey {
  std::string bytes;

  friend auto operator<=>(const CanonicalKey &, const CanonicalKey &) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey &k) const noexcept {
    return std::hash<std::string>()(k.bytes);
  }
};

namespace internal {
// Upper-triangle adjacency bits in column order x(0,1), x(0,2), x(1,2),
// x(0,3), ..., packed MSB-first so that vector comparison is lexicographic
// on the bit string.
using Certificate = std::vector<std::uint64_t>;

inline Certificate certificate(const Graph &g, const std::vector<int> &inv) {
  const int n = g.vertex_count();
  const std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
  Certificate cert((nbits + 63) / 64, 0);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if (g.has_edge(inv[i], inv[j]))
        cert[k / 64] |= std::uint64_t { 1 } << (63 - k % 64);
    }
  }
  return cert;
}

// Ordered partition stored as a cell rank per vertex (ranks 0..k-1).
class CanonicalSearch {
public:
  explicit CanonicalSearch(const Graph &g)
      : g_(g), n_(g.vertex_count()), uf_(n_) { }

  std::vector<int> run() {
    std::vector<int> colors(n_, 0);
    refine(colors);
    std::vector<int> path;
    search(colors, path);
    return best_labeling_;
  }

private:
  int refine(std::vector<int> &colors) const {
    int ncolors = count_colors(colors);
    std::vector<std::tuple<int, std::vector<int>, int>> sig(n_);
    while (true) {
      for (int v = 0; v < n_; ++v) {
        std::vector<int> nc;
        nc.reserve(g_.degree(v));
        for (int w: g_.neighbors(v))
          nc.push_back(colors[w]);
        std::sort(nc.begin(), nc.end());
        sig[v] = { colors[v], std::move(nc), v };
      }
      std::sort(sig.begin(), sig.end());

      int rank = 0;
      for (int i = 0; i < n_; ++i) {
        if (i > 0
            && (std::get<0>(sig[i]) != std::get<0>(sig[i - 1])
                || std::get<1>(sig[i]) != std::get<1>(sig[i - 1])))
          ++rank;
        colors[std::get<2>(sig[i])] = rank;
      }
      const int updated = n_ == 0 ? 0 : rank + 1;
      if (updated == ncolors)
        return ncolors;
      ncolors = updated;
    }
  }

  static int count_colors(const std::vector<int> &colors) {
    int mx = -1;
    for (int c: colors)
      mx = std::max(mx, c);
    return mx + 1;
  }

  static std::vector<int> individualize(const std::vector<int> &colors,
                                        int v) {
    std::vector<int> out(colors);
    const int c = colors[v];
    for (std::size_t u = 0; u < colors.size(); ++u) {
      if (colors[u] > c || (colors[u] == c && static_cast<int>(u) != v))
        ++out[u];
    }
    return out;
  }

  // Smallest non-singleton cell; lowest rank among equals.
  std::vector<int> target_cell(const std::vector<int> &colors) const {
    std::vector<int> sizes(n_, 0);
    for (int c: colors)
      ++sizes[c];
    int best = -1;
    for (int c = 0; c < n_; ++c) {
      if (sizes[c] > 1 && (best < 0 || sizes[c] < sizes[best]))
        best = c;
    }
    std::vector<int> cell;
    if (best < 0)
      return cell;
    for (int v = 0; v < n_; ++v) {
      if (colors[v] == best)
        cell.push_back(v);
    }
    return cell;
  }

  void search(const std::vector<int> &colors, std::vector<int> &path) {
    const int depth = static_cast<int>(path.size());
    auto cell = target_cell(colors);
    if (cell.empty()) {
      leaf(colors, path);
      return;
    }

    std::vector<int> explored;
    for (int v: cell) {
      if (in_explored_orbit(v, explored, path))
        continue;
      explored.push_back(v);

      auto child = individualize(colors, v);
      refine(child);
      path.push_back(v);
      search(child, path);
      path.pop_back();

      if (jump_to_ >= 0) {
        if (jump_to_ < depth)
          return;
        jump_to_ = -1;
      }
    }
  }

  bool in_explored_orbit(int v, const std::vector<int> &explored,
                         const std::vector<int> &path) {
    if (explored.empty() || automorphisms_.empty())
      return false;

    // Orbits of the group generated by the automorphisms found so far that
    // fix the current path pointwise.
    std::iota(uf_.begin(), uf_.end(), 0);
    for (const auto &gamma: automorphisms_) {
      bool fixes = std::all_of(path.begin(), path.end(),
                               [&](int p) { return gamma[p] == p; });
      if (!fixes)
        continue;
      for (int x = 0; x < n_; ++x)
        unite(x, gamma[x]);
    }
    const int rv = find(v);
    return std::any_of(explored.begin(), explored.end(),
                       [&](int u) { return find(u) == rv; });
  }

  int find(int x) {
    while (uf_[x] != x) {
      uf_[x] = uf_[uf_[x]];
      x = uf_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b)
      uf_[std::max(a, b)] = std::min(a, b);
  }

  void leaf(const std::vector<int> &labeling, const std::vector<int> &path) {
    std::vector<int> inv(n_);
    for (int v = 0; v < n_; ++v)
      inv[labeling[v]] = v;
    Certificate cert = certificate(g_, inv);

    if (first_labeling_.empty()) {
      first_labeling_ = best_labeling_ = labeling;
      first_cert_ = best_cert_ = std::move(cert);
      first_path_ = path;
      return;
    }

    if (cert == first_cert_) {
      record_automorphism(first_labeling_, inv);
      auto mm = std::mismatch(path.begin(), path.end(), first_path_.begin(),
                              first_path_.end());
      jump_to_ = static_cast<int>(mm.first - path.begin());
      return;
    }

    if (cert == best_cert_) {
      record_automorphism(best_labeling_, inv);
    } else if (cert < best_cert_) {
      best_cert_ = std::move(cert);
      best_labeling_ = labeling;
    }
  }

  void record_automorphism(const std::vector<int> &ref_labeling,
                           const std::vector<int> &inv) {
    std::vector<int> gamma(n_);
    for (int v = 0; v < n_; ++v)
      gamma[v] = inv[ref_labeling[v]];
    automorphisms_.push_back(std::move(gamma));
  }

  const Graph &g_;
  int n_;
  std::vector<int> uf_;

  std::vector<int> first_labeling_, first_path_, best_labeling_;
  Certificate first_cert_, best_cert_;
  std::vector<std::vector<int>> automorphisms_;
  int jump_to_ = -1;
};
}  // namespace internal

/// Canonical labeling: vertex v of g becomes vertex result[v] of the
/// canonical form. Computed by equitable-partition refinement and
/// backtracking over the smallest non-singleton cell, keeping the labeling
/// with the lexicographically smallest adjacency bit string. Automorphisms
/// discovered along the way prune isomorphic subtrees.
inline std::vector<int> canonical_labeling(const Graph &g) {
  if (g.vertex_count() == 0)
    return {};
  return internal::CanonicalSearch(g).run();
}

/// The representative of g's isomorphism class.
inline Graph canonical_form(const Graph &g) {
  return permute(g, canonical_labeling(g));
}

inline CanonicalKey canonical_key(const Graph &g) {
  const int n = g.vertex_count();
  CanonicalKey key;
  // Two-byte vertex count, then the canonical certificate. The empty graph
  // has the fixed key "\0\0".
  key.bytes.push_back(static_cast<char>((n >> 8) & 0xff));
  key.bytes.push_back(static_cast<char>(n & 0xff));
  if (n == 0)
    return key;

  auto lab = canonical_labeling(g);
  std::vector<int> inv(n);
  for (int v = 0; v < n; ++v)
    inv[lab[v]] = v;
  for (std::uint64_t word: internal::certificate(g, inv)) {
    for (int b = 7; b >= 0; --b)
      key.bytes.push_back(static_cast<char>((word >> (8 * b)) & 0xff));
  }
  return key;
}

inline bool is_isomorphic(const Graph &a, const Graph &b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return false;
  auto da = degree_sequence(a), db = degree_sequence(b);
  std::sort(da.begin(), da.end());
  std::sort(db.begin(), db.end());
  if (da != db)
    return false;
  return canonical_key(a) == canonical_key(b);
}

}  // namespace lgigen

#endif  // LGIGEN_CANON_HPP_
