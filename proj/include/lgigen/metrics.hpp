//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_METRICS_HPP_
#define LGIGEN_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "lgigen/canon.hpp"
#include "lgigen/error.hpp"
#include "lgigen/graph.hpp"

namespace lgigen {

struct JacobiOptions {
  double tolerance = 1e-10;
  int max_sweeps = 100;
};

/// Eigenvalues of a dense symmetric matrix (row-major, n x n) by cyclic
/// Jacobi rotations, ascending. Iteration stops once the Frobenius norm of
/// the off-diagonal part drops below `tolerance`.
inline std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n,
                                                 const JacobiOptions &opts = {}) {
  auto at = [&](int i, int j) -> double & { return a[i * n + j]; };

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j)
        off += 2 * at(i, j) * at(i, j);
    }
    if (std::sqrt(off) < opts.tolerance)
      break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0)
          continue;
        const double theta = (at(q, q) - at(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0)
                         / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        at(p, q) = at(q, p) = 0;
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i)
    eig[i] = at(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

inline std::vector<double> adjacency_eigenvalues(const Graph &g) {
  const int n = g.vertex_count();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (auto [u, v]: g.edges())
    a[u * n + v] = a[v * n + u] = 1.0;
  return symmetric_eigenvalues(std::move(a), n);
}

/// Sum of absolute adjacency eigenvalues.
inline double graph_energy(const Graph &g) {
  if (g.edge_count() == 0)
    return 0.0;
  double ge = 0;
  for (double l: adjacency_eigenvalues(g))
    ge += std::abs(l);
  return ge;
}

struct PropertyProfile {
  int lgi_length = 0;
  int node_count = 0;
  double graph_energy = 0;
};

inline PropertyProfile property_profile(std::string_view text,
                                        const Graph &g) {
  return { static_cast<int>(text.size()), g.vertex_count(), graph_energy(g) };
}

/// Counts over half-open bins [origin + k*width, origin + (k+1)*width).
///
/// Values within 1e-9 bin widths below an edge are snapped onto it, so
/// eigenvalue sums that land a rounding error short of an integer bin
/// boundary fall into the same bin as the exact value.
class Histogram {
public:
  static constexpr double kSnap = 1e-9;

  /// \throws MetricError if `values` is empty or width is not positive.
  static Histogram build(std::span<const double> values, double width = 1.0,
                         double origin = 0.0) {
    if (values.empty())
      throw MetricError("histogram of an empty value list");
    if (!(width > 0))
      throw MetricError("histogram bin width must be positive");
    Histogram h(width, origin);
    for (double v: values)
      h.add(v);
    return h;
  }

  Histogram(double width, double origin): width_(width), origin_(origin) { }

  void add(double value) {
    auto bin = static_cast<long long>(
        std::floor((value - origin_) / width_ + kSnap));
    ++counts_[bin];
    ++total_;
  }

  double width() const { return width_; }

  double origin() const { return origin_; }

  std::uint64_t total() const { return total_; }

  const std::map<long long, std::uint64_t> &counts() const { return counts_; }

  double lower_edge(long long bin) const {
    return origin_ + static_cast<double>(bin) * width_;
  }

  /// Edges of the occupied range, ascending; one more than the bin count.
  std::vector<double> bin_edges() const {
    std::vector<double> edges;
    if (counts_.empty())
      return edges;
    for (long long b = counts_.begin()->first; b <= counts_.rbegin()->first + 1;
         ++b)
      edges.push_back(lower_edge(b));
    return edges;
  }

  double weight(long long bin) const {
    if (total_ == 0)
      return 0;
    auto it = counts_.find(bin);
    return it == counts_.end()
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(total_);
  }

private:
  double width_, origin_;
  std::map<long long, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

namespace internal {
// Normalized weights of a and b over the union of their occupied bins.
inline void aligned_weights(const Histogram &a, const Histogram &b,
                            std::vector<double> &wa, std::vector<double> &wb) {
  if (a.width() != b.width() || a.origin() != b.origin())
    throw MetricError("histograms use different binnings");
  if (a.total() == 0 || b.total() == 0)
    throw MetricError("histogram has no observations");

  std::set<long long> bins;
  for (auto &[k, c]: a.counts())
    bins.insert(k);
  for (auto &[k, c]: b.counts())
    bins.insert(k);
  for (long long k: bins) {
    wa.push_back(a.weight(k));
    wb.push_back(b.weight(k));
  }
}

inline double entropy_bits(std::span<const double> p) {
  double h = 0;
  for (double x: p) {
    if (x > 0)
      h -= x * std::log2(x);
  }
  return h;
}
}  // namespace internal

/// Continuous Tanimoto coefficient of two normalized histograms, in
/// percent.
inline double tanimoto(const Histogram &a, const Histogram &b) {
  std::vector<double> wa, wb;
  internal::aligned_weights(a, b, wa, wb);
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    ab += wa[i] * wb[i];
    aa += wa[i] * wa[i];
    bb += wb[i] * wb[i];
  }
  return ab / (aa + bb - ab) * 100.0;
}

/// Jensen-Shannon divergence with equal weights, in bits; in [0, 1].
inline double jsd(const Histogram &a, const Histogram &b) {
  std::vector<double> wa, wb;
  internal::aligned_weights(a, b, wa, wb);
  std::vector<double> mix(wa.size());
  for (std::size_t i = 0; i < wa.size(); ++i)
    mix[i] = (wa[i] + wb[i]) / 2;
  const double d = internal::entropy_bits(mix)
                   - (internal::entropy_bits(wa) + internal::entropy_bits(wb))
                         / 2;
  return std::clamp(d, 0.0, 1.0);
}

// Bin widths for the three tracked properties.
constexpr double kLgiLengthBinWidth = 1.0;
constexpr double kNodeCountBinWidth = 1.0;
constexpr double kGraphEnergyBinWidth = 0.5;

/// Parses a generated string into a graph iff it is valid.
using GraphValidator = std::function<std::optional<Graph>(std::string_view)>;

using KeySet = std::unordered_set<CanonicalKey, CanonicalKeyHash>;

struct GenerationReport {
  std::size_t generated = 0;
  std::size_t valid = 0;
  std::size_t unique = 0;
  std::size_t unknown = 0;

  double validity_pct() const { return pct(valid, generated).value_or(0.0); }

  /// Undefined when nothing is valid.
  std::optional<double> uniqueness_pct() const { return pct(unique, valid); }

  /// Undefined when nothing is unique.
  std::optional<double> novelty_pct() const { return pct(unknown, unique); }

private:
  static std::optional<double> pct(std::size_t num, std::size_t den) {
    if (den == 0)
      return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den) * 100.0;
  }
};

/// Validity, isomorphism-uniqueness and novelty of a generated set.
///
/// \throws MetricError on an empty input.
inline GenerationReport generation_report(
    std::span<const std::string> generated, const KeySet &training_keys,
    const GraphValidator &validator) {
  if (generated.empty())
    throw MetricError("no generated strings to evaluate");

  GenerationReport r;
  r.generated = generated.size();
  KeySet seen;
  for (const auto &s: generated) {
    auto g = validator(s);
    if (!g)
      continue;
    ++r.valid;
    auto key = canonical_key(*g);
    if (seen.insert(key).second) {
      ++r.unique;
      if (!training_keys.contains(key))
        ++r.unknown;
    }
  }
  return r;
}

/// Keys contributed by one generated graph (the graph itself, or its
/// scaffolds, or its ring systems).
using KeyFunction = std::function<std::vector<CanonicalKey>(const Graph &)>;

struct IntersectionResult {
  // Number of stream items consumed when the target was reached.
  std::optional<std::size_t> position;
  std::size_t consumed = 0;
  std::size_t distinct = 0;

  bool exhausted() const { return !position; }
};

/// Smallest prefix of `stream` whose accumulated distinct keys (excluding
/// training keys when `novel_only`) reach `target`.
inline IntersectionResult intersection_point(std::span<const Graph> stream,
                                             std::size_t target,
                                             const KeyFunction &keys_of,
                                             bool novel_only,
                                             const KeySet &training_keys) {
  IntersectionResult r;
  KeySet seen;
  if (target == 0) {
    r.position = 0;
    return r;
  }
  for (const auto &g: stream) {
    ++r.consumed;
    for (auto &k: keys_of(g)) {
      if (novel_only && training_keys.contains(k))
        continue;
      if (seen.insert(std::move(k)).second)
        ++r.distinct;
    }
    if (r.distinct >= target) {
      r.position = r.consumed;
      return r;
    }
  }
  return r;
}

}  // namespace lgigen

#endif  // LGIGEN_METRICS_HPP_
