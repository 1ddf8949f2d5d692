//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

// Command-line front end: prep, train, sample, evaluate, intersect, oracle.
// Exit status: 0 success, 2 input error, 3 training did not converge,
// 4 internal error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lgigen/augment.hpp"
#include "lgigen/canon.hpp"
#include "lgigen/error.hpp"
#include "lgigen/exam.hpp"
#include "lgigen/generate.hpp"
#include "lgigen/io.hpp"
#include "lgigen/nn/checkpoint.hpp"
#include "lgigen/nn/sample.hpp"
#include "lgigen/nn/trainer.hpp"
#include "lgigen/pipeline.hpp"

namespace fs = std::filesystem;
using namespace lgigen;

namespace {

enum ExitCode { kOk = 0, kInputError = 2, kNotConverged = 3, kInternalError = 4 };

std::string to_text(const std::string &v) { return v; }
std::string to_text(bool v) { return v ? "true" : "false"; }
std::string to_text(int v) { return std::to_string(v); }
std::string to_text(std::uint64_t v) { return std::to_string(v); }
std::string to_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Options of one subcommand, remembered so the resolved values can be
// written back out as a config file.
class Options {
public:
  explicit Options(CLI::App *sub): sub_(sub) {
    sub_->add_option("--config", config_path_,
                     "key = value file; command-line flags take precedence");
  }

  // `name` may carry a one-letter alias after a comma, as in "augment,k".
  template <typename V>
  CLI::Option *add(const std::string &name, V &var, const std::string &help) {
    const auto comma = name.find(',');
    const std::string key = name.substr(0, comma);
    std::string flags = "--" + key;
    if (comma != std::string::npos)
      flags += ",-" + name.substr(comma + 1);
    items_.emplace_back(key, [&var] { return to_text(var); });
    return sub_->add_option(flags, var, help)->capture_default_str();
  }

  CLI::Option *flag(const std::string &name, bool &var, const std::string &help) {
    items_.emplace_back(name, [&var] { return to_text(var); });
    return sub_->add_flag("--" + name, var, help);
  }

  std::vector<std::pair<std::string, std::string>> resolved() const {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto &[name, fn]: items_)
      out.emplace_back(name, fn());
    return out;
  }

  void write_config(const fs::path &path) const {
    write_text(path, "# lgigen " + sub_->get_name() + "\n"
                         + format_key_values(resolved()));
  }

private:
  CLI::App *sub_;
  std::string config_path_;
  std::vector<std::pair<std::string, std::function<std::string()>>> items_;
};

// Appends `--key=value` for every config entry not given on the command
// line. The subcommand name must be argv[1].
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size())
      path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0)
      path = args[i].substr(9);
  }
  if (!path)
    return args;
  std::ifstream in(*path);
  if (!in)
    throw InputError("cannot read config file " + *path);
  std::stringstream ss;
  ss << in.rdbuf();
  for (const auto &[key, value]: parse_key_values(ss.str())) {
    if (key == "config")
      continue;
    bool given = false;
    for (std::size_t i = 1; i < args.size(); ++i) {
      given = given || args[i] == "--" + key
              || args[i].rfind("--" + key + "=", 0) == 0;
    }
    if (!given)
      args.push_back("--" + key + "=" + value);
  }
  return args;
}

TextFormat format_option(const std::string &name) {
  try {
    return parse_text_format(name);
  } catch (const Error &e) {
    throw InputError(e.what());
  }
}

std::vector<std::string> nonblank(std::vector<std::string> lines) {
  std::erase_if(lines, [](const std::string &s) { return s.empty(); });
  return lines;
}

// Parses every line as a graph of `format`; reports offending lines.
std::vector<Graph> read_graphs(const std::vector<std::string> &lines,
                               TextFormat format, const std::string &what,
                               bool skip_invalid, std::size_t *invalid = nullptr) {
  std::vector<Graph> graphs;
  std::size_t bad = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    ValidityReport report;
    std::optional<Graph> g;
    if (format == TextFormat::kLgi) {
      report = check_lgi_validity(lines[i]);
      if (report.valid())
        g = parse_lgi(lines[i]);
    } else {
      try {
        g = decode_g6(lines[i]);
      } catch (const ParseError &e) {
        report.failures.push_back({ FailureKind::kBadLength, -1, -1, -1, -1, e.what() });
      }
    }
    if (!g) {
      ++bad;
      std::cerr << what << " line " << i + 1 << ": " << report.summary() << "\n";
      continue;
    }
    graphs.push_back(std::move(*g));
  }
  if (invalid)
    *invalid = bad;
  if (bad > 0 && !skip_invalid) {
    throw InputError(std::to_string(bad) + " invalid line(s) in " + what
                     + (what == "input" ? " (use --skip-invalid to drop them)" : ""));
  }
  return graphs;
}

std::string degree_list(const std::set<int> &degrees) {
  std::string out;
  for (int d: degrees)
    out += (out.empty() ? "" : ",") + std::to_string(d);
  return out;
}

// ---------------------------------------------------------------- prep

struct PrepArgs {
  std::string input, input_format = "lgi", format = "lgi", mode = "canonical",
                     out_dir;
  int synthetic = 0, augment = 5, min_vertices = 6, max_vertices = 12,
      max_degree = 4;
  bool connected = true, skip_invalid = false;
  std::uint64_t seed = 1;
};

int run_prep(const PrepArgs &a, const Options &opts) {
  const TextFormat out_format = format_option(a.format);
  if (a.input.empty() == (a.synthetic == 0))
    throw InputError("give exactly one of --input or --synthetic");
  if (a.mode != "canonical" && a.mode != "augmented")
    throw InputError("--mode must be canonical or augmented");

  std::vector<Graph> graphs;
  std::size_t input_lines = 0, invalid = 0, duplicates = 0;
  if (!a.input.empty()) {
    auto lines = nonblank(read_lines(a.input));
    input_lines = lines.size();
    if (lines.empty())
      throw InputError("input file is empty");
    auto parsed = read_graphs(lines, format_option(a.input_format), "input",
                              a.skip_invalid, &invalid);
    auto dd = dedup_isomorphic(parsed);
    graphs = std::move(dd.graphs);
    duplicates = dd.duplicates;
  } else {
    RandomGraphOptions ro { a.min_vertices, a.max_vertices, a.max_degree,
                            a.connected, -1 };
    graphs = synthetic_graphs(a.synthetic, ro,
                              split_seed(a.seed, streams::kSynthetic));
    input_lines = graphs.size();
  }
  if (graphs.empty())
    throw InputError("no valid graphs in input");

  const CorpusMode mode = a.mode == "canonical" ? CorpusMode::canonical()
                                                : CorpusMode::augmented(a.augment);
  std::vector<std::string> canonical;
  for (const auto &g: graphs)
    canonical.push_back(canonical_string(g, out_format));
  Corpus corpus = build_corpus(graphs, mode, split_seed(a.seed, streams::kCorpus),
                               out_format);
  std::vector<std::string> ids;
  std::set<char> alphabet;
  for (const auto &e: corpus.entries) {
    ids.push_back(std::to_string(e.graph_id));
    alphabet.insert(e.text.begin(), e.text.end());
  }

  const fs::path dir(a.out_dir);
  write_lines(dir / "graphs.txt", canonical);
  write_lines(dir / "corpus.txt", corpus.strings());
  write_lines(dir / "corpus_ids.txt", ids);
  std::vector<std::pair<std::string, std::string>> summary {
    { "input_lines", std::to_string(input_lines) },
    { "invalid_lines", std::to_string(invalid) },
    { "duplicate_graphs", std::to_string(duplicates) },
    { "graphs", std::to_string(graphs.size()) },
    { "strings", std::to_string(corpus.entries.size()) },
    { "alphabet", std::string(alphabet.begin(), alphabet.end()) },
    { "format", std::string(to_string(out_format)) },
    { "mode", a.mode },
    { "augment", std::to_string(mode.augmentation) },
  };
  std::string csv = "metric,value\n";
  for (const auto &[k, v]: summary)
    csv += k + "," + v + "\n";
  write_text(dir / "prep_summary.csv", csv);
  opts.write_config(dir / "prep_config.txt");
  std::cout << graphs.size() << " graphs, " << corpus.entries.size()
            << " strings written to " << dir.string() << "\n";
  return kOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string corpus, format = "lgi", out_dir, interval = "wald",
                      precision = "float";
  std::uint64_t seed = 1;
  double target = 0.95, lr = 1e-3, clip = 5.0, temperature = 1.0;
  int n_sample = 180, patience = 10, max_epochs = 100, batch_size = 64,
      embed_hidden = 128, encoder_hidden = 64, encoders = 4, max_length = 100;
};

template <typename T>
int run_train_impl(const TrainArgs &a, const Options &opts) {
  const TextFormat format = format_option(a.format);
  auto corpus = nonblank(read_lines(a.corpus));
  if (corpus.empty())
    throw InputError("corpus is empty");
  auto graphs = read_graphs(corpus, format, "corpus", false);
  const auto checker = ValidityChecker::for_training_set(format, graphs);

  nn::ModelShape shape;
  shape.embed_hidden = a.embed_hidden;
  shape.encoder_hidden = a.encoder_hidden;
  shape.encoders = a.encoders;
  nn::TrainConfig tc;
  tc.learning_rate = a.lr;
  tc.batch_size = a.batch_size;
  tc.clip_norm = a.clip;
  nn::SampleOptions so { a.max_length, a.temperature };
  ExamConfig ec;
  ec.target_validity = a.target;
  ec.n_sample = a.n_sample;
  ec.patience = a.patience;
  ec.max_epochs = a.max_epochs;
  ec.seed = split_seed(a.seed, streams::kExam);
  if (a.interval == "wilson")
    ec.interval = IntervalMethod::kWilson;
  else if (a.interval != "wald")
    throw InputError("--interval must be wald or wilson");

  nn::ModelTrainer<T> trainer(corpus, shape, tc, so, a.seed);
  const Margins m = ec.margins();
  std::printf("%zu strings, vocabulary %d, margins [%.4f, %.4f]\n",
              corpus.size(), trainer.vocab().size(), m.lower, m.upper);
  auto res = gen_train_loop(trainer, checker, ec, [&](const ExamRecord &r) {
    std::printf("epoch %3d  loss %.4f  valid %d/%d (%.3f)  %s  streak %d\n",
                r.epoch, trainer.last_epoch().mean_loss, r.valid_count,
                r.sampled, r.validity_fraction, r.passed ? "pass" : "fail",
                r.streak_after);
    std::fflush(stdout);
  });

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  std::map<std::string, std::string> info {
    { "format", std::string(to_string(format)) },
    { "domain_degrees", degree_list(checker.domain_degrees()) },
    { "precision", a.precision },
    { "seed", std::to_string(a.seed) },
    { "max_length", std::to_string(a.max_length) },
    { "temperature", to_text(a.temperature) },
    { "stopped_at_epoch", std::to_string(res.log.stopped_at_epoch) },
    { "selected_epoch", std::to_string(res.log.selected_epoch) },
  };
  nn::Checkpoint<T> selected { res.selected.params, trainer.vocab(),
                               res.selected.epoch, res.log.records,
                               res.log.converged, info };
  nn::save_checkpoint(dir / "selected.ckpt", selected);
  nn::Checkpoint<T> latest { trainer.params(), trainer.vocab(),
                             res.log.stopped_at_epoch, res.log.records,
                             res.log.converged, info };
  nn::save_checkpoint(dir / "latest.ckpt", latest);

  std::string csv = "epoch,valid_count,fraction,passed,streak\n";
  for (const auto &r: res.log.records) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d,%d,%.6f,%d,%d\n", r.epoch, r.valid_count,
                  r.validity_fraction, r.passed ? 1 : 0, r.streak_after);
    csv += buf;
  }
  write_text(dir / "train_log.csv", csv);
  opts.write_config(dir / "train_config.txt");

  if (!res.log.converged) {
    std::printf("did not converge within %d epochs; kept epoch %d (best validity)\n",
                a.max_epochs, res.log.selected_epoch);
    return kNotConverged;
  }
  std::printf("converged at epoch %d; selected epoch %d\n",
              res.log.stopped_at_epoch, res.log.selected_epoch);
  return kOk;
}

int run_train(const TrainArgs &a, const Options &opts) {
  if (a.precision == "float")
    return run_train_impl<float>(a, opts);
  if (a.precision == "double")
    return run_train_impl<double>(a, opts);
  throw InputError("--precision must be float or double");
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
  std::string checkpoint, out;
  int count = 1000, max_length = 0;
  double temperature = 1.0;
  std::uint64_t seed = 1;
};

std::string peek_precision(const std::string &path) {
  auto ck = nn::load_checkpoint<double>(path);
  auto it = ck.info.find("precision");
  return it == ck.info.end() ? "double" : it->second;
}

template <typename T>
std::vector<std::string> sample_impl(const SampleArgs &a) {
  auto ck = nn::load_checkpoint<T>(a.checkpoint);
  nn::SampleOptions so;
  so.temperature = a.temperature;
  so.max_length = a.max_length;
  if (so.max_length <= 0) {
    auto it = ck.info.find("max_length");
    so.max_length = it == ck.info.end() ? 100 : std::stoi(it->second);
  }
  return nn::sample_strings(ck.params, ck.vocab, a.count,
                            split_seed(a.seed, streams::kSample), so);
}

int run_sample(const SampleArgs &a, const Options &opts) {
  if (a.count < 0)
    throw InputError("--count must be non-negative");
  auto strings = peek_precision(a.checkpoint) == "float" ? sample_impl<float>(a)
                                                         : sample_impl<double>(a);
  if (a.out.empty() || a.out == "-") {
    for (const auto &s: strings)
      std::cout << s << "\n";
  } else {
    write_lines(a.out, strings);
    opts.write_config(a.out + ".config.txt");
  }
  return kOk;
}

// ------------------------------------------------------- evaluate, intersect

struct EvalArgs {
  std::string generated, training, format = "lgi", out, svg_dir;
};

std::vector<Graph> read_training(const std::string &path, TextFormat format) {
  auto lines = nonblank(read_lines(path));
  if (lines.empty())
    throw InputError("training file is empty");
  return read_graphs(lines, format, "training", false);
}

std::vector<std::string> read_generated(const std::string &path) {
  auto lines = read_lines(path);
  if (lines.empty())
    throw InputError("generated file is empty");
  return lines;
}

int run_evaluate(const EvalArgs &a, const Options &opts) {
  const TextFormat format = format_option(a.format);
  auto training = read_training(a.training, format);
  auto generated = read_generated(a.generated);
  auto report = evaluate_generated(generated, training, format);
  const std::string csv = rows_to_csv(report_rows(report));
  if (a.out.empty() || a.out == "-") {
    std::cout << csv;
  } else {
    write_text(a.out, csv);
    opts.write_config(a.out + ".config.txt");
  }
  if (!a.svg_dir.empty()) {
    for (const auto &p: report.properties) {
      auto ht = p.training_histogram(), hg = p.generated_histogram();
      if (!ht || !hg)
        continue;
      write_text(fs::path(a.svg_dir) / (p.name + ".svg"),
                 histogram_svg(p.name, *ht, "training", *hg, "generated"));
    }
  }
  return kOk;
}

int run_intersect(const EvalArgs &a, const Options &opts) {
  const TextFormat format = format_option(a.format);
  auto training = read_training(a.training, format);
  auto generated = read_generated(a.generated);
  const auto checker = ValidityChecker::for_training_set(format, training);
  std::vector<Graph> stream;
  for (const auto &s: generated) {
    if (auto g = checker(s))
      stream.push_back(std::move(*g));
  }
  const std::string csv = intersection_csv(intersection_table(stream, training));
  if (a.out.empty() || a.out == "-") {
    std::cout << csv;
  } else {
    write_text(a.out, csv);
    opts.write_config(a.out + ".config.txt");
  }
  return kOk;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  int n = 4;
  std::string format = "lgi", out;
};

int run_oracle(const OracleArgs &a, const Options &opts) {
  if (a.n < 0 || a.n > 6)
    throw InputError("--n must be between 0 and 6");
  if (a.format != "lgi" && a.format != "g6" && a.format != "both")
    throw InputError("--format must be lgi, g6 or both");
  std::vector<std::string> lines;
  for (const auto &g: enumerate_graphs(a.n)) {
    const std::string lgi = canonical_lgi(g), g6 = encode_g6(canonical_form(g));
    lines.push_back(a.format == "lgi" ? lgi : a.format == "g6" ? g6 : lgi + " " + g6);
  }
  if (a.out.empty() || a.out == "-") {
    for (const auto &l: lines)
      std::cout << l << "\n";
  } else {
    write_lines(a.out, lines);
    opts.write_config(a.out + ".config.txt");
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app { "lgigen: text-based generative models for sparse graphs" };
  app.require_subcommand(1);

  PrepArgs prep;
  auto *prep_cmd = app.add_subcommand("prep", "Build a training corpus");
  Options prep_opts(prep_cmd);
  prep_opts.add("input", prep.input, "Newline-delimited graph strings");
  prep_opts.add("input-format", prep.input_format, "lgi or g6");
  prep_opts.add("synthetic", prep.synthetic, "Generate this many distinct random graphs");
  prep_opts.add("min-vertices", prep.min_vertices, "Synthetic: minimum vertices");
  prep_opts.add("max-vertices", prep.max_vertices, "Synthetic: maximum vertices");
  prep_opts.add("max-degree", prep.max_degree, "Synthetic: maximum degree");
  prep_opts.add("connected", prep.connected, "Synthetic: connected graphs only");
  prep_opts.add("format", prep.format, "Corpus format: lgi or g6");
  prep_opts.add("mode", prep.mode, "canonical or augmented");
  prep_opts.add("augment,k", prep.augment, "Randomization attempts per graph");
  prep_opts.add("seed", prep.seed, "Root seed");
  prep_opts.flag("skip-invalid", prep.skip_invalid, "Drop invalid input lines");
  prep_opts.add("out-dir", prep.out_dir, "Output directory")->required();

  TrainArgs train;
  auto *train_cmd = app.add_subcommand("train", "Train a generator with exam-based stopping");
  Options train_opts(train_cmd);
  train_opts.add("corpus", train.corpus, "Corpus file from prep")->required();
  train_opts.add("format", train.format, "lgi or g6");
  train_opts.add("out-dir", train.out_dir, "Output directory")->required();
  train_opts.add("seed", train.seed, "Root seed");
  train_opts.add("target", train.target, "Target validity fraction");
  train_opts.add("n-sample", train.n_sample, "Strings sampled per exam");
  train_opts.add("patience", train.patience, "Consecutive passing exams to stop");
  train_opts.add("max-epochs", train.max_epochs, "Epoch limit");
  train_opts.add("interval", train.interval, "wald or wilson");
  train_opts.add("lr", train.lr, "Adam learning rate");
  train_opts.add("batch-size", train.batch_size, "Mini-batch size");
  train_opts.add("clip", train.clip, "Global gradient-norm clip (<= 0 disables)");
  train_opts.add("embed-hidden", train.embed_hidden, "Embedding LSTM width");
  train_opts.add("encoder-hidden", train.encoder_hidden, "Encoder LSTM width");
  train_opts.add("encoders", train.encoders, "Number of parallel encoders");
  train_opts.add("max-length", train.max_length, "Longest sampled string");
  train_opts.add("temperature", train.temperature, "Sampling temperature");
  train_opts.add("precision", train.precision, "float or double");

  SampleArgs sample;
  auto *sample_cmd = app.add_subcommand("sample", "Sample strings from a checkpoint");
  Options sample_opts(sample_cmd);
  sample_opts.add("checkpoint", sample.checkpoint, "Checkpoint file")->required();
  sample_opts.add("count", sample.count, "Number of strings");
  sample_opts.add("seed", sample.seed, "Root seed");
  sample_opts.add("out", sample.out, "Output file (default stdout)");
  sample_opts.add("max-length", sample.max_length,
                  "Longest string (0: value stored in the checkpoint)");
  sample_opts.add("temperature", sample.temperature, "Sampling temperature");

  EvalArgs eval;
  auto *eval_cmd = app.add_subcommand("evaluate", "Compare generated strings with a training set");
  Options eval_opts(eval_cmd);
  eval_opts.add("generated", eval.generated, "Generated strings")->required();
  eval_opts.add("training", eval.training, "Training graphs")->required();
  eval_opts.add("format", eval.format, "lgi or g6");
  eval_opts.add("out", eval.out, "Report CSV (default stdout)");
  eval_opts.add("svg-dir", eval.svg_dir, "Write property histograms as SVG here");

  EvalArgs inter;
  auto *inter_cmd = app.add_subcommand("intersect", "Intersection points against a training set");
  Options inter_opts(inter_cmd);
  inter_opts.add("generated", inter.generated, "Generated strings")->required();
  inter_opts.add("training", inter.training, "Training graphs")->required();
  inter_opts.add("format", inter.format, "lgi or g6");
  inter_opts.add("out", inter.out, "CSV output (default stdout)");

  OracleArgs oracle;
  auto *oracle_cmd = app.add_subcommand("oracle", "List all graphs on n vertices");
  Options oracle_opts(oracle_cmd);
  oracle_opts.add("n", oracle.n, "Vertex count (0..6)");
  oracle_opts.add("format", oracle.format, "lgi, g6 or both");
  oracle_opts.add("out", oracle.out, "Output file (default stdout)");

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args));
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(std::move(rev));
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*prep_cmd)
      return run_prep(prep, prep_opts);
    if (*train_cmd)
      return run_train(train, train_opts);
    if (*sample_cmd)
      return run_sample(sample, sample_opts);
    if (*eval_cmd)
      return run_evaluate(eval, eval_opts);
    if (*inter_cmd)
      return run_intersect(inter, inter_opts);
    if (*oracle_cmd)
      return run_oracle(oracle, oracle_opts);
  } catch (const Error &e) {
    // Library errors all stem from the inputs: unreadable or malformed
    // files, unencodable graphs, infeasible options, bad checkpoints.
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
  return kInternalError;
}
