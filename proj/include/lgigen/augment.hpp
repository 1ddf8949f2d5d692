//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_AUGMENT_HPP_
#define LGIGEN_AUGMENT_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lgigen/canon.hpp"
#include "lgigen/error.hpp"
#include "lgigen/g6.hpp"
#include "lgigen/graph.hpp"
#include "lgigen/lgi.hpp"
#include "lgigen/random.hpp"

namespace lgigen {

enum class TextFormat { kLgi, kG6 };

constexpr std::string_view to_string(TextFormat f) {
  return f == TextFormat::kLgi ? "lgi" : "g6";
}

inline TextFormat parse_text_format(std::string_view name) {
  if (name == "lgi" || name == "LGI")
    return TextFormat::kLgi;
  if (name == "g6" || name == "G6" || name == "graph6")
    return TextFormat::kG6;
  throw Error("unknown text format '" + std::string(name) + "'");
}

inline std::string canonical_string(const Graph &g, TextFormat format) {
  if (format == TextFormat::kLgi)
    return canonical_lgi(g);
  return encode_g6(canonical_form(g));
}

inline std::string randomized_string(const Graph &g, std::uint64_t seed,
                                     TextFormat format) {
  if (format == TextFormat::kLgi)
    return write_lgi(g, LgiOrder::randomized(seed));
  return randomized_g6(g, seed);
}

/// Parses a string of either format. Syntax is enforced; LGI degree
/// declarations and g6 degree domains are not.
inline Graph parse_graph(std::string_view text, TextFormat format) {
  return format == TextFormat::kLgi ? parse_lgi(text) : decode_g6(text);
}

/// Format-aware validity rule: LGI strings must parse with consistent
/// degrees; g6 strings must decode with the right length and degrees drawn
/// from `domain_degrees`.
class ValidityChecker {
public:
  static ValidityChecker lgi() { return ValidityChecker(TextFormat::kLgi, {}); }

  static ValidityChecker g6(std::set<int> domain_degrees) {
    return ValidityChecker(TextFormat::kG6, std::move(domain_degrees));
  }

  /// Domain degrees are collected from `training` for g6.
  static ValidityChecker for_training_set(TextFormat format,
                                          const std::vector<Graph> &training) {
    if (format == TextFormat::kLgi)
      return lgi();
    std::set<int> degrees;
    for (const auto &g: training) {
      for (int v = 0; v < g.vertex_count(); ++v)
        degrees.insert(g.degree(v));
    }
    return g6(std::move(degrees));
  }

  TextFormat format() const { return format_; }

  const std::set<int> &domain_degrees() const { return domain_; }

  ValidityReport check(std::string_view text) const {
    return format_ == TextFormat::kLgi ? check_lgi_validity(text)
                                       : check_g6_validity(text, domain_);
  }

  std::optional<Graph> operator()(std::string_view text) const {
    return format_ == TextFormat::kLgi ? parse_valid_lgi(text)
                                       : parse_valid_g6(text, domain_);
  }

private:
  ValidityChecker(TextFormat format, std::set<int> domain)
      : format_(format), domain_(std::move(domain)) { }

  TextFormat format_;
  std::set<int> domain_;
};

/// Deduplicated set of k randomized serializations of g, sorted. Attempt i
/// uses seed split_seed(seed, i).
inline std::vector<std::string> augment_graph(const Graph &g, int k,
                                              std::uint64_t seed,
                                              TextFormat format) {
  if (k < 1)
    throw Error("augmentation factor must be >= 1");
  std::set<std::string> unique;
  for (int i = 0; i < k; ++i)
    unique.insert(randomized_string(g, split_seed(seed, i), format));
  return { unique.begin(), unique.end() };
}

struct CorpusMode {
  // 0 selects canonical mode; k >= 1 selects k randomization attempts.
  int augmentation = 0;

  static CorpusMode canonical() { return { 0 }; }

  static CorpusMode augmented(int k) { return { k }; }

  bool is_canonical() const { return augmentation == 0; }
};

struct CorpusEntry {
  std::string text;
  int graph_id;

  friend bool operator==(const CorpusEntry &, const CorpusEntry &) = default;
};

struct Corpus {
  std::vector<CorpusEntry> entries;
  CorpusMode mode;
  TextFormat format = TextFormat::kLgi;

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto &e: entries)
      out.push_back(e.text);
    return out;
  }
};

/// Training corpus over `graphs`. Canonical mode emits one canonical string
/// per graph; augmented(k) mode emits augment_graph(g_i, k,
/// split_seed(seed, i)). Entries are ordered by graph id, then string.
inline Corpus build_corpus(const std::vector<Graph> &graphs, CorpusMode mode,
                           std::uint64_t seed, TextFormat format) {
  if (graphs.empty())
    throw Error("cannot build a corpus from an empty graph list");

  Corpus corpus;
  corpus.mode = mode;
  corpus.format = format;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const int id = static_cast<int>(i);
    if (mode.is_canonical()) {
      corpus.entries.push_back({ canonical_string(graphs[i], format), id });
      continue;
    }
    for (auto &s: augment_graph(graphs[i], mode.augmentation,
                                split_seed(seed, i), format))
      corpus.entries.push_back({ std::move(s), id });
  }
  return corpus;
}

}  // namespace lgigen

#endif  // LGIGEN_AUGMENT_HPP_
