//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_LGI_HPP_
#define LGIGEN_LGI_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lgigen/canon.hpp"
#include "lgigen/error.hpp"
#include "lgigen/graph.hpp"
#include "lgigen/random.hpp"
#include "lgigen/validity.hpp"

// Linear Graph Input (LGI): a SMILES-like depth-first line notation where
// each vertex is written as the character for its degree ('@' = 0 through
// 'F' = 6), ring-closure indices follow the vertex they belong to ('1'-'9',
// or '%' and two digits), branches are parenthesized, and connected
// components are separated by '.'.

namespace lgigen {

constexpr int kMaxLgiDegree = 6;
constexpr int kMaxRingIndex = 99;

struct LgiToken {
  enum class Kind { kDegree, kRing, kBranchOpen, kBranchClose, kDot };

  Kind kind;
  // Degree for kDegree, ring index for kRing, else 0.
  int value = 0;
  // Offset of the token's first character in the source text.
  int position = 0;

  friend bool operator==(const LgiToken &a, const LgiToken &b) {
    return a.kind == b.kind && a.value == b.value;
  }
};

constexpr char lgi_degree_char(int degree) {
  return static_cast<char>('@' + degree);
}

constexpr bool is_lgi_degree_char(char c) {
  return c >= '@' && c <= '@' + kMaxLgiDegree;
}

namespace internal {
inline void lex_lgi(std::string_view text, std::vector<LgiToken> &tokens,
                    std::vector<Failure> &failures) {
  using Kind = LgiToken::Kind;
  const int len = static_cast<int>(text.size());
  for (int i = 0; i < len; ++i) {
    const char c = text[i];
    if (is_lgi_degree_char(c)) {
      tokens.push_back({ Kind::kDegree, c - '@', i });
    } else if (c >= '1' && c <= '9') {
      tokens.push_back({ Kind::kRing, c - '0', i });
    } else if (c == '%') {
      auto is_digit = [&](int k) {
        return k < len && text[k] >= '0' && text[k] <= '9';
      };
      if (!is_digit(i + 1) || !is_digit(i + 2)) {
        failures.push_back({ FailureKind::kLexicalError, i, -1, -1, -1,
                             "'%' must be followed by two digits" });
        continue;
      }
      int value = (text[i + 1] - '0') * 10 + (text[i + 2] - '0');
      if (value == 0) {
        failures.push_back({ FailureKind::kLexicalError, i, -1, -1, -1,
                             "ring index 0 is not allowed" });
      } else {
        tokens.push_back({ Kind::kRing, value, i });
      }
      i += 2;
    } else if (c == '(') {
      tokens.push_back({ Kind::kBranchOpen, 0, i });
    } else if (c == ')') {
      tokens.push_back({ Kind::kBranchClose, 0, i });
    } else if (c == '.') {
      tokens.push_back({ Kind::kDot, 0, i });
    } else {
      std::string detail = "unexpected character '";
      detail += c;
      detail += "' at offset " + std::to_string(i);
      failures.push_back(
          { FailureKind::kLexicalError, i, -1, -1, -1, std::move(detail) });
    }
  }
}

struct LgiStructure {
  Graph graph;
  std::vector<int> declared;
  std::vector<Failure> failures;
};

// Depth-first reconstruction. Never throws; every structural problem is
// appended to `failures` and reconstruction continues where possible.
inline LgiStructure reconstruct_lgi(const std::vector<LgiToken> &tokens,
                                    int text_length) {
  using Kind = LgiToken::Kind;
  LgiStructure out;
  auto &failures = out.failures;

  int current = -1;
  bool component_has_vertex = false;
  std::vector<std::pair<int, int>> branch_stack;  // (vertex, position)
  std::vector<std::pair<int, int>> open_rings(kMaxRingIndex + 1, { -1, -1 });

  auto syntax = [&](int pos, std::string detail) {
    failures.push_back(
        { FailureKind::kSyntaxError, pos, -1, -1, -1, std::move(detail) });
  };

  for (std::size_t t = 0; t < tokens.size(); ++t) {
    const LgiToken &tok = tokens[t];
    switch (tok.kind) {
    case Kind::kDegree: {
      int v = out.graph.add_vertex();
      out.declared.push_back(tok.value);
      if (current >= 0)
        out.graph.add_edge(current, v);
      current = v;
      component_has_vertex = true;
      break;
    }
    case Kind::kRing: {
      if (current < 0) {
        syntax(tok.position, "ring index without a preceding vertex");
        break;
      }
      auto &slot = open_rings[tok.value];
      if (slot.first < 0) {
        slot = { current, tok.position };
        break;
      }
      const int other = slot.first;
      slot = { -1, -1 };
      if (other == current) {
        failures.push_back({ FailureKind::kSelfLoop, tok.position, tok.value,
                             -1, -1,
                             "ring " + std::to_string(tok.value)
                                 + " closes on its own vertex" });
      } else if (!out.graph.add_edge(other, current)) {
        failures.push_back({ FailureKind::kDuplicateEdge, tok.position,
                             tok.value, -1, -1,
                             "ring " + std::to_string(tok.value)
                                 + " duplicates edge ("
                                 + std::to_string(other) + ","
                                 + std::to_string(current) + ")" });
      }
      break;
    }
    case Kind::kBranchOpen:
      if (current < 0) {
        syntax(tok.position, "branch without a preceding vertex");
        break;
      }
      if (t + 1 >= tokens.size()
          || tokens[t + 1].kind != Kind::kDegree) {
        syntax(tok.position, "branch must start with a vertex");
      }
      branch_stack.emplace_back(current, tok.position);
      break;
    case Kind::kBranchClose:
      if (branch_stack.empty()) {
        failures.push_back({ FailureKind::kUnmatchedBracket, tok.position, -1,
                             -1, -1, "')' without matching '('" });
        break;
      }
      current = branch_stack.back().first;
      branch_stack.pop_back();
      break;
    case Kind::kDot:
      if (!component_has_vertex)
        syntax(tok.position, "empty component");
      for (auto [v, pos]: branch_stack) {
        failures.push_back({ FailureKind::kUnmatchedBracket, pos, -1, -1, -1,
                             "'(' not closed before '.'" });
      }
      branch_stack.clear();
      current = -1;
      component_has_vertex = false;
      break;
    }
  }

  if (!tokens.empty() && tokens.back().kind == Kind::kDot)
    syntax(text_length - 1, "empty component");
  for (auto [v, pos]: branch_stack) {
    failures.push_back({ FailureKind::kUnmatchedBracket, pos, -1, -1, -1,
                         "'(' never closed" });
  }
  for (int idx = 1; idx <= kMaxRingIndex; ++idx) {
    if (open_rings[idx].first >= 0) {
      failures.push_back({ FailureKind::kUnmatchedRingIndex,
                           open_rings[idx].second, idx, -1, -1,
                           "ring " + std::to_string(idx) + " never closed" });
    }
  }
  return out;
}

[[noreturn]] inline void throw_parse_failures(
    const std::vector<Failure> &failures) {
  ValidityReport report { failures };
  throw ParseError("invalid LGI string: " + report.summary());
}
}  // namespace internal

/// Splits LGI text into tokens.
///
/// \throws ParseError for characters outside the LGI alphabet or a malformed
///         '%' index.
inline std::vector<LgiToken> tokenize_lgi(std::string_view text) {
  std::vector<LgiToken> tokens;
  std::vector<Failure> failures;
  internal::lex_lgi(text, tokens, failures);
  if (!failures.empty())
    internal::throw_parse_failures(failures);
  return tokens;
}

/// Rebuilds the graph described by an LGI string. Declared degrees are not
/// compared with actual ones; see check_lgi_validity().
///
/// \throws ParseError on lexical errors, unbalanced brackets, unclosed ring
///         indices, or ring closures that would create a self-loop or a
///         duplicate edge.
inline Graph parse_lgi(std::string_view text) {
  auto tokens = tokenize_lgi(text);
  auto st = internal::reconstruct_lgi(tokens, static_cast<int>(text.size()));
  if (!st.failures.empty())
    internal::throw_parse_failures(st.failures);
  return std::move(st.graph);
}

/// Validates an LGI string without throwing. A string is valid iff it
/// parses and every vertex has exactly the degree its character declares.
inline ValidityReport check_lgi_validity(std::string_view text) {
  ValidityReport report;
  std::vector<LgiToken> tokens;
  internal::lex_lgi(text, tokens, report.failures);
  if (!report.valid())
    return report;

  auto st = internal::reconstruct_lgi(tokens, static_cast<int>(text.size()));
  report.failures = std::move(st.failures);
  for (int v = 0; v < st.graph.vertex_count(); ++v) {
    if (st.graph.degree(v) != st.declared[v]) {
      report.failures.push_back(
          { FailureKind::kDegreeMismatch, -1, v, st.declared[v],
            st.graph.degree(v),
            "vertex " + std::to_string(v) + " declares degree "
                + std::to_string(st.declared[v]) + " but has "
                + std::to_string(st.graph.degree(v)) });
    }
  }
  return report;
}

/// Parses `text` and returns the graph only when it is fully valid.
inline std::optional<Graph> parse_valid_lgi(std::string_view text) {
  std::vector<LgiToken> tokens;
  std::vector<Failure> failures;
  internal::lex_lgi(text, tokens, failures);
  if (!failures.empty())
    return std::nullopt;
  auto st = internal::reconstruct_lgi(tokens, static_cast<int>(text.size()));
  if (!st.failures.empty())
    return std::nullopt;
  for (int v = 0; v < st.graph.vertex_count(); ++v) {
    if (st.graph.degree(v) != st.declared[v])
      return std::nullopt;
  }
  return std::move(st.graph);
}

/// Traversal order used when writing LGI.
class LgiOrder {
public:
  /// Lowest vertex first at every choice point.
  static LgiOrder in_place() { return LgiOrder(std::nullopt); }

  /// Seeded random component order, root vertex and neighbor order.
  static LgiOrder randomized(std::uint64_t seed) { return LgiOrder(seed); }

  const std::optional<std::uint64_t> &seed() const { return seed_; }

private:
  explicit LgiOrder(std::optional<std::uint64_t> seed): seed_(seed) { }

  std::optional<std::uint64_t> seed_;
};

namespace internal {
class LgiWriter {
public:
  LgiWriter(const Graph &g, const LgiOrder &order)
      : g_(g), n_(g.vertex_count()), nbrs_(n_), pre_(n_, -1),
        children_(n_), ring_partners_(n_), ring_of_edge_(n_) {
    for (int v = 0; v < n_; ++v) {
      if (g.degree(v) > kMaxLgiDegree) {
        throw EncodeError("DegreeOverflow: vertex " + std::to_string(v)
                          + " has degree " + std::to_string(g.degree(v))
                          + " > " + std::to_string(kMaxLgiDegree));
      }
      auto nb = g.neighbors(v);
      nbrs_[v].assign(nb.begin(), nb.end());
    }

    auto comps = connected_components(g);
    for (auto &c: comps)
      roots_.push_back(c.front());

    if (order.seed()) {
      Rng rng(*order.seed());
      shuffle(std::span(comps), rng);
      roots_.clear();
      for (auto &c: comps)
        roots_.push_back(c[uniform_below(rng, c.size())]);
      for (auto &nb: nbrs_)
        shuffle(std::span(nb), rng);
    }
  }

  std::string write() {
    std::string out;
    for (std::size_t i = 0; i < roots_.size(); ++i) {
      if (i > 0)
        out += '.';
      dfs(roots_[i], -1);
      emit(roots_[i], out);
    }
    return out;
  }

private:
  void dfs(int v, int parent) {
    pre_[v] = counter_++;
    for (int w: nbrs_[v]) {
      if (w == parent)
        continue;
      if (pre_[w] < 0) {
        children_[v].push_back(w);
        dfs(w, v);
      } else if (pre_[w] < pre_[v]) {
        // Back edge to an ancestor: opened at w, closed at v.
        ring_partners_[w].push_back(v);
        ring_partners_[v].push_back(w);
      }
    }
  }

  static void append_ring(std::string &out, int index) {
    if (index <= 9) {
      out += static_cast<char>('0' + index);
    } else {
      out += '%';
      out += static_cast<char>('0' + index / 10);
      out += static_cast<char>('0' + index % 10);
    }
  }

  void emit(int v, std::string &out) {
    out += lgi_degree_char(g_.degree(v));

    std::vector<int> closing, opening;
    for (int w: ring_partners_[v])
      (pre_[w] < pre_[v] ? closing : opening).push_back(w);
    std::sort(opening.begin(), opening.end(),
              [&](int a, int b) { return pre_[a] < pre_[b]; });

    std::vector<int> indices;
    for (int w: closing)
      indices.push_back(lookup_ring(w, v));
    // New indices never reuse one being closed on this same vertex.
    for (int w: opening) {
      int idx = 1;
      while (idx <= kMaxRingIndex
             && (in_use_[idx]
                 || std::find(indices.begin(), indices.end(), idx)
                        != indices.end()))
        ++idx;
      if (idx > kMaxRingIndex)
        throw EncodeError("more than 99 ring closures open at once");
      in_use_[idx] = true;
      ring_of_edge_[v].emplace_back(w, idx);
      indices.push_back(idx);
    }
    for (int w: closing)
      in_use_[lookup_ring(w, v)] = false;

    std::sort(indices.begin(), indices.end());
    for (int idx: indices)
      append_ring(out, idx);

    const auto &ch = children_[v];
    for (std::size_t i = 0; i < ch.size(); ++i) {
      const bool last = i + 1 == ch.size();
      if (!last)
        out += '(';
      emit(ch[i], out);
      if (!last)
        out += ')';
    }
  }

  int lookup_ring(int opener, int closer) const {
    for (auto [w, idx]: ring_of_edge_[opener]) {
      if (w == closer)
        return idx;
    }
    return -1;
  }

  const Graph &g_;
  int n_;
  std::vector<std::vector<int>> nbrs_;
  std::vector<int> roots_;
  std::vector<int> pre_;
  int counter_ = 0;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> ring_partners_;
  std::vector<std::vector<std::pair<int, int>>> ring_of_edge_;
  bool in_use_[kMaxRingIndex + 1] = {};
};
}  // namespace internal

/// Serializes g as LGI in the given traversal order.
///
/// Ring indices take the lowest free value when a ring opens and are freed
/// when it closes. Ring digits are written right after the vertex character,
/// in ascending order, before any branch.
///
/// \throws EncodeError if a vertex has degree > 6.
inline std::string write_lgi(const Graph &g, const LgiOrder &order) {
  return internal::LgiWriter(g, order).write();
}

/// Relabeling-invariant LGI string: the in-place serialization of g's
/// canonical form.
///
/// \throws EncodeError if a vertex has degree > 6.
inline std::string canonical_lgi(const Graph &g) {
  if (g.max_degree() > kMaxLgiDegree)
    return write_lgi(g, LgiOrder::in_place());  // throws DegreeOverflow
  return write_lgi(canonical_form(g), LgiOrder::in_place());
}

}  // namespace lgigen

#endif  // LGIGEN_LGI_HPP_
