//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// selected criterion fails.
//
//   lgigen_acceptance                 criteria 1-6, 9, 10
//   lgigen_acceptance --only 7,8      the directional training runs

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgigen/augment.hpp"
#include "lgigen/exam.hpp"
#include "lgigen/generate.hpp"
#include "lgigen/metrics.hpp"
#include "lgigen/nn/trainer.hpp"
#include "lgigen/pipeline.hpp"
#include "lgigen/scaffold.hpp"
#include "gradient_check.hpp"
#include "oracles.hpp"

using namespace lgigen;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

Graph from_edges(int n, std::initializer_list<Edge> edges) {
  Graph g(n);
  for (auto [u, v]: edges)
    g.add_edge(u, v);
  return g;
}

std::string fmt(const char *f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ------------------------------------------------------------ 1. codecs

Outcome codec_roundtrips() {
  const auto t0 = Clock::now();
  const int expected[] = { 1, 2, 4, 11, 34 };
  int checked = 0, failed = 0;
  std::string counts;
  bool counts_ok = true;
  for (int n = 1; n <= 5; ++n) {
    auto classes = enumerate_graphs(n);
    const auto brute = oracle::classes_by_permutation(n).size();
    counts_ok = counts_ok && classes.size() == static_cast<std::size_t>(expected[n - 1])
                && brute == classes.size();
    counts += (n > 1 ? "," : "") + std::to_string(classes.size());
    for (const auto &g: classes) {
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Graph via_lgi = parse_lgi(write_lgi(g, LgiOrder::randomized(seed)));
        Graph via_g6 = decode_g6(randomized_g6(g, seed));
        checked += 2;
        failed += !oracle::isomorphic_by_permutation(g, via_lgi);
        failed += !oracle::isomorphic_by_permutation(g, via_g6);
      }
    }
  }
  const double secs = seconds_since(t0);
  return { counts_ok && failed == 0 && secs < 10,
           "classes " + counts + ", roundtrips " + std::to_string(checked - failed) + "/"
               + std::to_string(checked) + ", " + fmt("%.2f s", secs) };
}

// --------------------------------------------------------- 2. g6 bit-exact

Outcome g6_identity() {
  int ok = 0;
  auto all = oracle::all_labeled_graphs(5);
  for (const auto &g: all)
    ok += decode_g6(encode_g6(g)) == g;
  const Graph e = decode_g6("EhEG");
  const bool example = e.vertex_count() == 6 && std::string("EhEG").size() == 4
                       && encode_g6(e) == "EhEG";
  return { ok == static_cast<int>(all.size()) && all.size() == 1024 && example,
           std::to_string(ok) + "/" + std::to_string(all.size())
               + " labeled graphs, EhEG -> " + std::to_string(e.vertex_count())
               + " vertices" };
}

// ---------------------------------------------------------- 3. energy

Outcome graph_energy_values() {
  const Graph k2 = from_edges(2, { { 0, 1 } });
  const Graph k3 = from_edges(3, { { 0, 1 }, { 1, 2 }, { 0, 2 } });
  const Graph p3 = from_edges(3, { { 0, 1 }, { 1, 2 } });
  const Graph c6 = from_edges(6, { { 0, 1 }, { 1, 2 }, { 2, 3 }, { 3, 4 }, { 4, 5 }, { 5, 0 } });
  const double worst_named =
      std::max({ std::abs(graph_energy(k2) - 2), std::abs(graph_energy(k3) - 4),
                 std::abs(graph_energy(p3) - 2 * std::numbers::sqrt2),
                 std::abs(graph_energy(c6) - 8) });
  double worst_oracle = 0;
  int graphs = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto &g: oracle::all_labeled_graphs(n)) {
      const double ref = oracle::energy_by_characteristic_polynomial(g);
      worst_oracle = std::max(worst_oracle, std::isnan(ref)
                                                ? INFINITY
                                                : std::abs(graph_energy(g) - ref));
      ++graphs;
    }
  }
  return { worst_named <= 1e-9 && worst_oracle <= 1e-7,
           "named cases max error " + fmt("%.2e", worst_named) + ", " + std::to_string(graphs)
               + " graphs vs characteristic polynomial max error "
               + fmt("%.2e", worst_oracle) };
}

// --------------------------------------------------------- 4. histograms

Outcome distribution_metrics() {
  std::vector<double> v { 1, 2, 2, 3, 5.5, 7 };
  auto h = Histogram::build(v);
  const double t_self = tanimoto(h, h), j_self = jsd(h, h);
  std::vector<double> lo { 1, 2 }, hi { 10, 11 };
  const double j_disjoint = jsd(Histogram::build(lo), Histogram::build(hi));
  std::vector<double> a { 0, 1 }, b { 0, 0 };  // (0.5, 0.5) and (1, 0)
  const double t_ab = tanimoto(Histogram::build(a), Histogram::build(b));
  return { t_self == 100.0 && j_self == 0.0 && std::abs(j_disjoint - 1) <= 1e-12
               && std::abs(t_ab - 50.0) <= 1e-9,
           "tanimoto(h,h)=" + fmt("%.17g", t_self) + " jsd(h,h)=" + fmt("%.17g", j_self)
               + " jsd(disjoint)=" + fmt("%.17g", j_disjoint)
               + " tanimoto(A,B)=" + fmt("%.12g", t_ab) };
}

// ------------------------------------------------------ 5. gradient check

Outcome gradient_check_all_tensors() {
  const auto t0 = Clock::now();
  nn::ModelShape shape;
  shape.vocab_size = 4;
  shape.embed_hidden = 3;
  shape.encoder_hidden = 2;
  auto p = nn::scaled_init(shape, 7);
  std::vector<std::vector<nn::Token>> seqs { { nn::Vocabulary::kBos, 3, 3,
                                               nn::Vocabulary::kEos } };
  auto worst = nn::gradient_check(p, nn::Batch::from(seqs));
  double max_err = 0;
  std::string where;
  for (const auto &[name, err]: worst) {
    if (err >= max_err) {
      max_err = err;
      where = name;
    }
  }
  const double secs = seconds_since(t0);
  return { max_err < 1e-4 && secs < 30 && !worst.empty(),
           std::to_string(worst.size()) + " tensors, worst relative error "
               + fmt("%.2e", max_err) + " (" + where + "), " + fmt("%.2f s", secs) };
}

// ----------------------------------------------------- 6. exam state machine

struct ScriptedTrainer {
  std::vector<double> script;
  int epoch = 0;

  void train_epoch(int e) { epoch = e; }

  std::vector<std::string> sample(int n, std::uint64_t) const {
    const int valid = static_cast<int>(std::lround(script.at(epoch - 1) * n));
    std::vector<std::string> out(valid, "B1BB1");
    out.resize(n, "AB");
    return out;
  }

  int snapshot() const { return epoch; }
};

Outcome exam_state_machine() {
  ExamConfig cfg;
  cfg.target_validity = 0.95;
  cfg.n_sample = 180;
  cfg.patience = 10;
  std::vector<double> s1 { 0.50 };
  s1.insert(s1.end(), 15, 0.96);
  ScriptedTrainer t1 { s1 };
  auto r1 = gen_train_loop(t1, ValidityChecker::lgi(), cfg);
  const bool first = r1.log.converged && r1.log.stopped_at_epoch == 11
                     && r1.log.selected_epoch == 2 && r1.selected == 2;

  // Dip below the lower margin at epoch 6 restarts the streak at epoch 7.
  std::vector<double> s2(5, 0.96);
  s2.push_back(0.80);
  s2.insert(s2.end(), 12, 0.96);
  ScriptedTrainer t2 { s2 };
  auto r2 = gen_train_loop(t2, ValidityChecker::lgi(), cfg);
  const bool dip = r2.log.records[4].streak_after == 5 && r2.log.records[5].streak_after == 0
                   && r2.log.stopped_at_epoch == 16 && r2.log.selected_epoch == 7;

  const Margins m = ci_margins(0.95, 180);
  const bool margins = std::abs(0.95 - m.lower - 0.0318) <= 1e-4
                       && std::abs(m.upper - 0.95 - 0.0318) <= 1e-4;
  return { first && dip && margins,
           "stop " + std::to_string(r1.log.stopped_at_epoch) + " select "
               + std::to_string(r1.log.selected_epoch) + "; dip run stop "
               + std::to_string(r2.log.stopped_at_epoch) + " select "
               + std::to_string(r2.log.selected_epoch) + "; margins "
               + fmt("%.4f", m.lower) + ".." + fmt("%.4f", m.upper) };
}

// ------------------------------------------------- 7, 8. directional runs

struct DirectionalRun {
  double validity = 0;
  std::optional<double> length_jsd;
  int stopped = 0, selected = 0;
  bool converged = false;
};

constexpr int kEvaluationSamples = 1000;

DirectionalRun train_and_evaluate(const std::vector<Graph> &graphs, CorpusMode mode,
                                  std::uint64_t seed, const std::string &label) {
  const auto t0 = Clock::now();
  const Corpus corpus =
      build_corpus(graphs, mode, split_seed(seed, streams::kCorpus), TextFormat::kLgi);
  const auto strings = corpus.strings();
  ExamConfig ec;
  ec.target_validity = 0.90;
  ec.n_sample = 180;
  ec.patience = 10;
  ec.max_epochs = 100;
  ec.seed = split_seed(seed, streams::kExam);
  nn::SampleOptions so;
  nn::ModelTrainer<float> trainer(strings, nn::ModelShape {}, nn::TrainConfig {}, so, seed);
  auto res = gen_train_loop(trainer, ValidityChecker::lgi(), ec, [&](const ExamRecord &r) {
    std::printf("  [%s] epoch %3d  loss %.4f  valid %.3f  streak %d  (%.0f s)\n",
                label.c_str(), r.epoch, trainer.last_epoch().mean_loss,
                r.validity_fraction, r.streak_after, seconds_since(t0));
    std::fflush(stdout);
  });

  auto sampled = nn::sample_strings(res.selected.params, trainer.vocab(), kEvaluationSamples,
                                    split_seed(seed, streams::kSample), so);
  auto rep = evaluate_generated(sampled, graphs, TextFormat::kLgi);
  DirectionalRun out;
  out.validity = rep.generation.validity_pct() / 100;
  out.length_jsd = rep.properties.at(0).jsd;
  out.stopped = res.log.stopped_at_epoch;
  out.selected = res.log.selected_epoch;
  out.converged = res.log.converged;
  std::printf("  [%s] %d strings, stopped %d, selected %d%s, validity %.4f, "
              "jsd(lgi_length) %s\n",
              label.c_str(), static_cast<int>(strings.size()), out.stopped, out.selected,
              out.converged ? "" : " (not converged)", out.validity,
              format_number(out.length_jsd).c_str());
  std::fflush(stdout);
  return out;
}

std::pair<Outcome, Outcome> directional(int graph_count, int runs) {
  RandomGraphOptions opts { 6, 12, 4, true, -1 };
  const auto graphs = synthetic_graphs(graph_count, opts, split_seed(2024, streams::kSynthetic));
  std::printf("  %d synthetic graphs, %d runs per mode\n", graph_count, runs);
  double val_c = 0, val_a = 0, jsd_c = 0, jsd_a = 0;
  bool jsd_defined = true;
  for (int r = 0; r < runs; ++r) {
    const std::uint64_t seed = 100 + r;
    auto c = train_and_evaluate(graphs, CorpusMode::canonical(), seed,
                                "canonical/" + std::to_string(r));
    auto a = train_and_evaluate(graphs, CorpusMode::augmented(5), seed,
                                "augmented/" + std::to_string(r));
    val_c += c.validity / runs;
    val_a += a.validity / runs;
    jsd_defined = jsd_defined && c.length_jsd && a.length_jsd;
    jsd_c += c.length_jsd.value_or(NAN) / runs;
    jsd_a += a.length_jsd.value_or(NAN) / runs;
  }
  Outcome seven { val_a >= val_c && val_a >= 0.90,
                  "mean validity augmented " + fmt("%.4f", val_a) + " vs canonical "
                      + fmt("%.4f", val_c) };
  Outcome eight { jsd_defined && jsd_a <= jsd_c,
                  "mean jsd(lgi_length) augmented " + fmt("%.4f", jsd_a) + " vs canonical "
                      + fmt("%.4f", jsd_c) };
  return { seven, eight };
}

// ------------------------------------------------ 9. uniqueness, novelty

Outcome uniqueness_novelty() {
  RandomGraphOptions small { 1, 5, 4, false, -1 };
  std::vector<std::string> generated;
  for (std::uint64_t i = 0; i < 500; ++i) {
    const Graph g = random_graph(small, split_seed(91, i));
    std::string s = write_lgi(g, LgiOrder::randomized(split_seed(92, i)));
    if (i % 25 == 0)
      s += "A";  // leaves a declared degree unmatched
    generated.push_back(std::move(s));
  }
  std::vector<Graph> training;
  for (std::uint64_t i = 0; i < 40; ++i)
    training.push_back(random_graph(small, split_seed(93, i)));

  KeySet train_keys;
  for (const auto &g: training)
    train_keys.insert(canonical_key(g));
  const auto checker = ValidityChecker::lgi();
  const auto rep = generation_report(generated, train_keys,
                                     [&](std::string_view s) { return checker(s); });

  std::vector<Graph> reps;
  std::size_t valid = 0, novel = 0;
  for (const auto &s: generated) {
    auto g = checker(s);
    if (!g)
      continue;
    ++valid;
    bool seen = false;
    for (const auto &r: reps)
      seen = seen || oracle::isomorphic_by_permutation(*g, r);
    if (seen)
      continue;
    reps.push_back(*g);
    bool known = false;
    for (const auto &t: training)
      known = known || oracle::isomorphic_by_permutation(*g, t);
    novel += !known;
  }
  const bool ok = rep.generated == 500 && rep.valid == valid && rep.unique == reps.size()
                  && rep.unknown == novel && valid > 0 && novel > 0 && novel < reps.size();
  return { ok, "valid " + std::to_string(rep.valid) + "/" + std::to_string(valid)
                   + ", unique " + std::to_string(rep.unique) + "/"
                   + std::to_string(reps.size()) + ", novel " + std::to_string(rep.unknown)
                   + "/" + std::to_string(novel) + " (pipeline/brute force)" };
}

// --------------------------------------------------- 10. scaffolds, rings

Outcome scaffold_cases() {
  const Graph k3 = from_edges(3, { { 0, 1 }, { 1, 2 }, { 0, 2 } });
  const Graph tree = from_edges(5, { { 0, 1 }, { 1, 2 }, { 1, 3 }, { 3, 4 } });
  const Graph pendant = from_edges(4, { { 0, 1 }, { 1, 2 }, { 0, 2 }, { 0, 3 } });
  const Graph linked = from_edges(
      7, { { 0, 1 }, { 1, 2 }, { 0, 2 }, { 2, 3 }, { 3, 4 }, { 4, 5 }, { 5, 6 }, { 4, 6 } });

  const bool acyclic = scaffold_of(tree).empty() && ring_system_of(tree).empty();
  const auto ps = scaffold_of(pendant), pr = ring_system_of(pendant);
  const bool pendant_ok = ps.size() == 1 && ps[0].vertex_count() == 4
                          && oracle::isomorphic_by_permutation(ps[0], pendant)
                          && pr.size() == 1 && oracle::isomorphic_by_permutation(pr[0], k3);
  const auto lr = ring_system_of(linked);
  const bool linked_ok = lr.size() == 2 && oracle::isomorphic_by_permutation(lr[0], k3)
                         && oracle::isomorphic_by_permutation(lr[1], k3);
  return { acyclic && pendant_ok && linked_ok,
           std::string("acyclic ") + (acyclic ? "none" : "WRONG") + ", pendant triangle "
               + (pendant_ok ? "4-vertex scaffold + K3" : "WRONG") + ", linked triangles "
               + std::to_string(lr.size()) + " ring systems" };
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "Acceptance checks" };
  std::vector<int> only;
  int graphs = 5000, runs = 3;
  app.add_option("--only", only, "Criteria to run (default: all but 7 and 8)")
      ->delimiter(',')
      ->check(CLI::Range(1, 10));
  app.add_option("--graphs", graphs, "Synthetic corpus size for criteria 7 and 8")
      ->capture_default_str();
  app.add_option("--runs", runs, "Runs per mode for criteria 7 and 8")->capture_default_str();
  CLI11_PARSE(app, argc, argv);
  if (only.empty())
    only = { 1, 2, 3, 4, 5, 6, 9, 10 };
  const std::set<int> selected(only.begin(), only.end());

  bool all_pass = true;
  auto report = [&](int id, const Outcome &o) {
    std::printf("criterion %2d: %s  %s\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  };
  auto guarded = [&](int id, const std::function<Outcome()> &fn) {
    if (!selected.contains(id))
      return;
    try {
      report(id, fn());
    } catch (const std::exception &e) {
      report(id, { false, std::string("exception: ") + e.what() });
    }
  };

  guarded(1, codec_roundtrips);
  guarded(2, g6_identity);
  guarded(3, graph_energy_values);
  guarded(4, distribution_metrics);
  guarded(5, gradient_check_all_tensors);
  guarded(6, exam_state_machine);
  if (selected.contains(7) || selected.contains(8)) {
    try {
      auto [seven, eight] = directional(graphs, runs);
      if (selected.contains(7))
        report(7, seven);
      if (selected.contains(8))
        report(8, eight);
    } catch (const std::exception &e) {
      for (int id: { 7, 8 }) {
        if (selected.contains(id))
          report(id, { false, std::string("exception: ") + e.what() });
      }
    }
  }
  guarded(9, uniqueness_novelty);
  guarded(10, scaffold_cases);
  return all_pass ? 0 : 1;
}
