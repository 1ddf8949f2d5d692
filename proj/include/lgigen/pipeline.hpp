//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_PIPELINE_HPP_
#define LGIGEN_PIPELINE_HPP_

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lgigen/augment.hpp"
#include "lgigen/canon.hpp"
#include "lgigen/error.hpp"
#include "lgigen/generate.hpp"
#include "lgigen/lgi.hpp"
#include "lgigen/metrics.hpp"
#include "lgigen/random.hpp"
#include "lgigen/scaffold.hpp"

// Steps shared by the command-line tool and the acceptance runs.

namespace lgigen {

/// Pairwise non-isomorphic random graphs; draw i uses split_seed(seed, i).
///
/// \throws GraphError if `count` distinct graphs are not found within
///         100 * count + 1000 draws.
inline std::vector<Graph> synthetic_graphs(int count,
                                           const RandomGraphOptions &opts,
                                           std::uint64_t seed) {
  std::vector<Graph> out;
  KeySet seen;
  const std::uint64_t budget = 100ULL * static_cast<std::uint64_t>(count) + 1000;
  for (std::uint64_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    if (i == budget)
      throw GraphError("could not draw " + std::to_string(count)
                       + " distinct graphs with these options");
    Graph g = random_graph(opts, split_seed(seed, i));
    if (seen.insert(canonical_key(g)).second)
      out.push_back(std::move(g));
  }
  return out;
}

struct DedupResult {
  std::vector<Graph> graphs;  // first occurrence of each class, input order
  std::size_t duplicates = 0;
};

inline DedupResult dedup_isomorphic(std::span<const Graph> graphs) {
  DedupResult r;
  KeySet seen;
  for (const auto &g: graphs) {
    if (seen.insert(canonical_key(g)).second)
      r.graphs.push_back(g);
    else
      ++r.duplicates;
  }
  return r;
}

/// Length of the LGI string a graph is represented by: the string itself
/// for LGI input, otherwise the canonical LGI string (absent when a degree
/// exceeds the LGI alphabet).
inline std::optional<int> lgi_length_of(std::string_view text, const Graph &g,
                                        TextFormat format) {
  if (format == TextFormat::kLgi)
    return static_cast<int>(text.size());
  try {
    return static_cast<int>(canonical_lgi(g).size());
  } catch (const EncodeError &) {
    return std::nullopt;
  }
}

struct PropertySample {
  std::vector<double> lgi_length, node_count, graph_energy;

  void add(std::optional<int> len, const Graph &g) {
    if (len)
      lgi_length.push_back(*len);
    node_count.push_back(g.vertex_count());
    graph_energy.push_back(lgigen::graph_energy(g));
  }
};

struct PropertyComparison {
  std::string name;
  double bin_width = 1;
  std::vector<double> training, generated;
  std::optional<double> tanimoto, jsd;

  std::optional<Histogram> training_histogram() const {
    if (training.empty())
      return std::nullopt;
    return Histogram::build(training, bin_width);
  }

  std::optional<Histogram> generated_histogram() const {
    if (generated.empty())
      return std::nullopt;
    return Histogram::build(generated, bin_width);
  }
};

struct EvaluationReport {
  GenerationReport generation;
  std::vector<PropertyComparison> properties;
  std::size_t training_graphs = 0;
  UniqueCounts training_unique, generated_unique;
};

/// Validity, uniqueness, novelty, property overlaps and unique scaffold
/// counts of `generated` against `training`. Training-set lengths are
/// canonical LGI lengths; generated lengths are measured as generated.
inline EvaluationReport evaluate_generated(std::span<const std::string> generated,
                                           std::span<const Graph> training,
                                           TextFormat format) {
  if (training.empty())
    throw MetricError("empty training set");
  const std::vector<Graph> train_vec(training.begin(), training.end());
  const auto checker = ValidityChecker::for_training_set(format, train_vec);

  EvaluationReport rep;
  rep.training_graphs = training.size();
  rep.training_unique = unique_counts(training);
  rep.generation =
      generation_report(generated, rep.training_unique.graphs,
                        [&](std::string_view s) { return checker(s); });

  PropertySample tr, gen;
  for (const auto &g: training) {
    std::optional<int> len;
    try {
      len = static_cast<int>(canonical_lgi(g).size());
    } catch (const EncodeError &) {
    }
    tr.add(len, g);
  }
  std::vector<Graph> valid;
  for (const auto &s: generated) {
    auto g = checker(s);
    if (!g)
      continue;
    gen.add(lgi_length_of(s, *g, format), *g);
    valid.push_back(std::move(*g));
  }
  rep.generated_unique = unique_counts(valid);

  auto compare = [](std::string name, double width, std::vector<double> a,
                    std::vector<double> b) {
    PropertyComparison c { std::move(name), width, std::move(a), std::move(b),
                           std::nullopt, std::nullopt };
    auto ha = c.training_histogram(), hb = c.generated_histogram();
    if (ha && hb) {
      c.tanimoto = tanimoto(*ha, *hb);
      c.jsd = jsd(*ha, *hb);
    }
    return c;
  };
  rep.properties.push_back(compare("lgi_length", kLgiLengthBinWidth,
                                   tr.lgi_length, gen.lgi_length));
  rep.properties.push_back(compare("node_count", kNodeCountBinWidth,
                                   tr.node_count, gen.node_count));
  rep.properties.push_back(compare("graph_energy", kGraphEnergyBinWidth,
                                   tr.graph_energy, gen.graph_energy));
  return rep;
}

inline std::string format_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v))
    return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

/// Report rows in fixed order; undefined values are "NA".
inline std::vector<std::pair<std::string, std::string>> report_rows(
    const EvaluationReport &r) {
  std::vector<std::pair<std::string, std::string>> rows;
  const auto &g = r.generation;
  rows.emplace_back("generated", std::to_string(g.generated));
  rows.emplace_back("valid", std::to_string(g.valid));
  rows.emplace_back("unique", std::to_string(g.unique));
  rows.emplace_back("novel", std::to_string(g.unknown));
  rows.emplace_back("validity_pct", format_number(g.validity_pct()));
  rows.emplace_back("uniqueness_pct", format_number(g.uniqueness_pct()));
  rows.emplace_back("novelty_pct", format_number(g.novelty_pct()));
  for (const auto &p: r.properties) {
    rows.emplace_back("tanimoto_" + p.name, format_number(p.tanimoto));
    rows.emplace_back("jsd_" + p.name, format_number(p.jsd));
  }
  rows.emplace_back("training_graphs", std::to_string(r.training_graphs));
  rows.emplace_back("training_unique_graphs",
                    std::to_string(r.training_unique.graphs.size()));
  rows.emplace_back("training_unique_scaffolds",
                    std::to_string(r.training_unique.scaffolds.size()));
  rows.emplace_back("training_unique_ring_systems",
                    std::to_string(r.training_unique.ring_systems.size()));
  rows.emplace_back("generated_unique_scaffolds",
                    std::to_string(r.generated_unique.scaffolds.size()));
  rows.emplace_back("generated_unique_ring_systems",
                    std::to_string(r.generated_unique.ring_systems.size()));
  return rows;
}

inline std::string rows_to_csv(
    const std::vector<std::pair<std::string, std::string>> &rows) {
  std::string out = "metric,value\n";
  for (const auto &[k, v]: rows)
    out += k + "," + v + "\n";
  return out;
}

struct IntersectionRow {
  std::string keys;  // graphs, scaffolds or ring_systems
  std::string mode;  // unique or new
  std::size_t target = 0;
  IntersectionResult result;
};

/// Intersection points of the valid generated stream against the training
/// set's unique counts, for each key type and for unique and novel keys.
inline std::vector<IntersectionRow> intersection_table(
    std::span<const Graph> stream, std::span<const Graph> training) {
  const UniqueCounts tr = unique_counts(training);
  struct KeyType {
    const char *name;
    KeyFunction fn;
    const KeySet *train;
  };
  const KeyType types[] = { { "graphs", graph_keys, &tr.graphs },
                            { "scaffolds", scaffold_keys, &tr.scaffolds },
                            { "ring_systems", ring_system_keys, &tr.ring_systems } };
  std::vector<IntersectionRow> rows;
  for (const auto &t: types) {
    for (bool novel: { false, true }) {
      IntersectionRow row { t.name, novel ? "new" : "unique", t.train->size(), {} };
      row.result = intersection_point(stream, row.target, t.fn, novel, *t.train);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline std::string intersection_csv(const std::vector<IntersectionRow> &rows) {
  std::string out = "keys,mode,target,intersection,consumed,distinct\n";
  for (const auto &r: rows) {
    out += r.keys + "," + r.mode + "," + std::to_string(r.target) + ","
           + (r.result.position ? std::to_string(*r.result.position)
                                : std::string("exhausted"))
           + "," + std::to_string(r.result.consumed) + ","
           + std::to_string(r.result.distinct) + "\n";
  }
  return out;
}

/// Bar chart of two normalized histograms over their common bins.
inline std::string histogram_svg(const std::string &title, const Histogram &a,
                                 const std::string &a_label, const Histogram &b,
                                 const std::string &b_label) {
  long long lo = a.counts().begin()->first, hi = a.counts().rbegin()->first;
  lo = std::min(lo, b.counts().begin()->first);
  hi = std::max(hi, b.counts().rbegin()->first);
  const int bins = static_cast<int>(hi - lo + 1);
  double top = 0;
  for (long long k = lo; k <= hi; ++k)
    top = std::max({ top, a.weight(k), b.weight(k) });

  const double W = 640, H = 360, left = 50, bottom = 40, plot_w = W - left - 20,
               plot_h = H - bottom - 40;
  const double slot = plot_w / bins, bar = slot * 0.4;
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" font-family=\"sans-serif\" font-size=\"11\">\n",
                W, H);
  svg += buf;
  svg += "<text x=\"" + std::to_string(static_cast<int>(W / 2))
         + "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" + title
         + "</text>\n";
  for (int i = 0; i < bins; ++i) {
    const long long k = lo + i;
    const double x = left + i * slot;
    const double ha = top > 0 ? a.weight(k) / top * plot_h : 0;
    const double hb = top > 0 ? b.weight(k) / top * plot_h : 0;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"#4878a8\"/>\n",
                  x + slot * 0.1, H - bottom - ha, bar, ha);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                  "fill=\"#e0904a\"/>\n",
                  x + slot * 0.5, H - bottom - hb, bar, hb);
    svg += buf;
    if (bins <= 40 || i % (bins / 20 + 1) == 0) {
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%g</text>\n",
                    x + slot / 2, H - bottom + 14, a.lower_edge(k));
      svg += buf;
    }
  }
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.0f\" y1=\"%.0f\" x2=\"%.0f\" y2=\"%.0f\" "
                "stroke=\"black\"/>\n",
                left, H - bottom, W - 20, H - bottom);
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"15\" y=\"%.0f\" transform=\"rotate(-90 15 %.0f)\" "
                "text-anchor=\"middle\">fraction (max %.3f)</text>\n",
                H / 2, H / 2, top);
  svg += buf;
  svg += "<rect x=\"" + std::to_string(static_cast<int>(W - 180))
         + "\" y=\"30\" width=\"10\" height=\"10\" fill=\"#4878a8\"/>";
  svg += "<text x=\"" + std::to_string(static_cast<int>(W - 165))
         + "\" y=\"39\">" + a_label + "</text>\n";
  svg += "<rect x=\"" + std::to_string(static_cast<int>(W - 180))
         + "\" y=\"46\" width=\"10\" height=\"10\" fill=\"#e0904a\"/>";
  svg += "<text x=\"" + std::to_string(static_cast<int>(W - 165))
         + "\" y=\"55\">" + b_label + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace lgigen

#endif  // LGIGEN_PIPELINE_HPP_
