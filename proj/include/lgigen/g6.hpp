//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_G6_HPP_
#define LGIGEN_G6_HPP_

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lgigen/error.hpp"
#include "lgigen/graph.hpp"
#include "lgigen/random.hpp"
#include "lgigen/validity.hpp"

// graph6, short form only: one header character (63 + n, n <= 62) followed by
// the upper-triangle adjacency bits x(0,1), x(0,2), x(1,2), x(0,3), ...
// packed six per character, most significant bit first, zero padded, each
// group offset by 63.

namespace lgigen {

constexpr int kMaxG6Vertices = 62;
constexpr std::string_view kG6FileHeader = ">>graph6<<";

constexpr std::size_t g6_body_length(int n) {
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  return (bits + 5) / 6;
}

/// \throws EncodeError if g has more than 62 vertices.
inline std::string encode_g6(const Graph &g) {
  const int n = g.vertex_count();
  if (n > kMaxG6Vertices) {
    throw EncodeError("graph6 short form supports at most 62 vertices, got "
                      + std::to_string(n));
  }

  std::string out(1 + g6_body_length(n), static_cast<char>(63));
  out[0] = static_cast<char>(63 + n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      if (g.has_edge(i, j))
        out[1 + k / 6] = static_cast<char>(out[1 + k / 6] + (32 >> (k % 6)));
    }
  }
  return out;
}

/// Removes an optional ">>graph6<<" prefix and trailing line-ending
/// characters.
inline std::string_view strip_g6_decoration(std::string_view text) {
  if (text.starts_with(kG6FileHeader))
    text.remove_prefix(kG6FileHeader.size());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r'))
    text.remove_suffix(1);
  return text;
}

namespace internal {
inline std::optional<Graph> decode_g6_impl(std::string_view text,
                                           std::vector<Failure> &failures) {
  text = strip_g6_decoration(text);
  if (text.empty()) {
    failures.push_back(
        { FailureKind::kBadLength, 0, -1, -1, -1, "empty graph6 string" });
    return std::nullopt;
  }

  bool range_ok = true;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) {
      failures.push_back({ FailureKind::kCharOutOfRange, static_cast<int>(i),
                           -1, -1, -1,
                           "character code " + std::to_string(c)
                               + " outside 63..126" });
      range_ok = false;
    }
  }
  if (!range_ok)
    return std::nullopt;

  const int n = static_cast<unsigned char>(text[0]) - 63;
  if (n > kMaxG6Vertices) {
    failures.push_back({ FailureKind::kUnsupportedSize, 0, -1, -1, -1,
                         "multi-byte graph6 size headers are not supported" });
    return std::nullopt;
  }

  const std::size_t expected = 1 + g6_body_length(n);
  if (text.size() != expected) {
    failures.push_back({ FailureKind::kBadLength, -1, -1,
                         static_cast<int>(expected),
                         static_cast<int>(text.size()),
                         "expected " + std::to_string(expected)
                             + " characters for " + std::to_string(n)
                             + " vertices, got "
                             + std::to_string(text.size()) });
    return std::nullopt;
  }

  Graph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++k) {
      const int group = static_cast<unsigned char>(text[1 + k / 6]) - 63;
      if (group & (32 >> (k % 6)))
        g.add_edge(i, j);
    }
  }

  const std::size_t nbits = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (nbits % 6 != 0) {
    const int last = static_cast<unsigned char>(text.back()) - 63;
    const int pad_mask = (1 << (6 - nbits % 6)) - 1;
    if (last & pad_mask) {
      failures.push_back({ FailureKind::kNonzeroPadding,
                           static_cast<int>(text.size()) - 1, -1, -1, -1,
                           "nonzero padding bits" });
      return std::nullopt;
    }
  }
  return g;
}
}  // namespace internal

/// \throws ParseError on a bad length for the declared vertex count, a
///         character outside 63..126, nonzero padding, or a multi-byte
///         header.
inline Graph decode_g6(std::string_view text) {
  std::vector<Failure> failures;
  auto g = internal::decode_g6_impl(text, failures);
  if (!g)
    throw ParseError("invalid graph6 string: "
                     + ValidityReport { failures }.summary());
  return std::move(*g);
}

/// Valid iff the string decodes with the length its header requires and
/// every vertex degree is one of `domain_degrees`.
inline ValidityReport check_g6_validity(std::string_view text,
                                        const std::set<int> &domain_degrees) {
  ValidityReport report;
  auto g = internal::decode_g6_impl(text, report.failures);
  if (!g)
    return report;
  for (int v = 0; v < g->vertex_count(); ++v) {
    if (!domain_degrees.contains(g->degree(v))) {
      report.failures.push_back({ FailureKind::kOutOfDomainDegree, -1, v, -1,
                                  g->degree(v),
                                  "vertex " + std::to_string(v)
                                      + " has out-of-domain degree "
                                      + std::to_string(g->degree(v)) });
    }
  }
  return report;
}

inline std::optional<Graph> parse_valid_g6(
    std::string_view text, const std::set<int> &domain_degrees) {
  std::vector<Failure> failures;
  auto g = internal::decode_g6_impl(text, failures);
  if (!g)
    return std::nullopt;
  for (int v = 0; v < g->vertex_count(); ++v) {
    if (!domain_degrees.contains(g->degree(v)))
      return std::nullopt;
  }
  return g;
}

inline std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(seed);
  shuffle(std::span(perm), rng);
  return perm;
}

/// Encodes g under a seeded random vertex relabeling.
inline std::string randomized_g6(const Graph &g, std::uint64_t seed) {
  return encode_g6(permute(g, random_permutation(g.vertex_count(), seed)));
}

/// Re-encodes a graph6 string under a seeded random vertex order.
///
/// \throws ParseError if `text` does not decode.
inline std::string randomize_g6(std::string_view text, std::uint64_t seed) {
  return randomized_g6(decode_g6(text), seed);
}

}  // namespace lgigen

#endif  // LGIGEN_G6_HPP_
