//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_EXAM_HPP_
#define LGIGEN_EXAM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lgigen/error.hpp"
#include "lgigen/random.hpp"

// Examination-driven training: after every epoch the generator is sampled
// and the valid fraction compared with a confidence margin around a target.
// Training stops once a run of consecutive epochs all pass, and the weights
// from the first epoch of that run are kept.

namespace lgigen {

enum class IntervalMethod { kWald, kWilson };

struct Margins {
  double lower = 0;
  double upper = 1;
};

/// 95% interval around `target` for a proportion observed on n samples.
/// Wald: target -+ z sqrt(target (1 - target) / n). Both ends are clamped
/// to [0, 1].
///
/// \throws Error unless 0 < target < 1 and n >= 1.
inline Margins ci_margins(double target, double n,
                          IntervalMethod method = IntervalMethod::kWald,
                          double z = 1.96) {
  if (!(target > 0 && target < 1))
    throw Error("target validity must lie strictly between 0 and 1");
  if (!(n >= 1))
    throw Error("sample size must be at least 1");
  double lo, hi;
  if (method == IntervalMethod::kWald) {
    const double half = z * std::sqrt(target * (1 - target) / n);
    lo = target - half;
    hi = target + half;
  } else {
    const double z2n = z * z / n;
    const double center = (target + z2n / 2) / (1 + z2n);
    const double half = z / (1 + z2n)
                        * std::sqrt(target * (1 - target) / n + z2n / (4 * n));
    lo = center - half;
    hi = center + half;
  }
  return { std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0) };
}

struct ExamConfig {
  double target_validity = 0.95;
  int n_sample = 180;
  int patience = 10;
  int max_epochs = 100;
  std::uint64_t seed = 0;
  IntervalMethod interval = IntervalMethod::kWald;

  Margins margins() const {
    return ci_margins(target_validity, n_sample, interval);
  }
};

struct ExamRecord {
  int epoch = 0;
  int sampled = 0;
  int valid_count = 0;
  double validity_fraction = 0;
  bool passed = false;
  int streak_after = 0;

  friend bool operator==(const ExamRecord &, const ExamRecord &) = default;
};

/// Draws exactly n_sample strings from `sampler(n, seed)` and counts those
/// accepted by `checker`. Epoch, pass flag and streak are left for the
/// monitor.
template <typename Sampler, typename Checker>
ExamRecord run_exam(Sampler &&sampler, const Checker &checker, int n_sample,
                    std::uint64_t seed) {
  if (n_sample < 1)
    throw Error("exam sample size must be positive");
  std::vector<std::string> drawn = sampler(n_sample, seed);
  if (static_cast<int>(drawn.size()) != n_sample)
    throw Error("sampler returned the wrong number of strings");
  ExamRecord r;
  r.sampled = n_sample;
  for (const auto &s: drawn) {
    if (checker(std::string_view(s)))
      ++r.valid_count;
  }
  r.validity_fraction =
      static_cast<double>(r.valid_count) / static_cast<double>(n_sample);
  return r;
}

/// Pass/streak bookkeeping over successive exams.
class ExamMonitor {
public:
  ExamMonitor(Margins margins, int patience)
      : margins_(margins), patience_(patience) {
    if (patience < 1)
      throw Error("patience must be positive");
  }

  const Margins &margins() const { return margins_; }

  int patience() const { return patience_; }

  /// Files the exam of the next epoch.
  const ExamRecord &observe(ExamRecord r) {
    r.epoch = static_cast<int>(records_.size()) + 1;
    r.passed = r.validity_fraction >= margins_.lower;
    streak_ = r.passed ? streak_ + 1 : 0;
    r.streak_after = streak_;
    records_.push_back(r);
    if (!best_ || r.validity_fraction > records_[*best_ - 1].validity_fraction)
      best_ = r.epoch;
    return records_.back();
  }

  int streak() const { return streak_; }

  bool converged() const { return streak_ >= patience_; }

  /// First epoch of the live passing streak.
  std::optional<int> streak_start() const {
    if (streak_ == 0)
      return std::nullopt;
    return static_cast<int>(records_.size()) - streak_ + 1;
  }

  /// Earliest epoch with the highest validity so far.
  std::optional<int> best_epoch() const { return best_; }

  const std::vector<ExamRecord> &records() const { return records_; }

private:
  Margins margins_;
  int patience_;
  int streak_ = 0;
  std::optional<int> best_;
  std::vector<ExamRecord> records_;
};

struct TrainLog {
  std::vector<ExamRecord> records;
  Margins margins;
  int stopped_at_epoch = 0;
  int selected_epoch = 0;
  bool converged = false;
};

template <typename Snapshot>
struct GenResult {
  TrainLog log;
  Snapshot selected;
};

/// The training loop. `trainer` provides
///   void train_epoch(int epoch);                 // epochs count from 1
///   std::vector<std::string> sample(int n, std::uint64_t seed) const;
///   Snapshot snapshot() const;
/// Exams draw with seed split_seed(cfg.seed, epoch). Stops once `patience`
/// consecutive exams pass and returns the snapshot of the first of them;
/// otherwise, after max_epochs, returns the best-validity snapshot with
/// `converged` false.
template <typename Trainer, typename Checker>
auto gen_train_loop(Trainer &trainer, const Checker &checker,
                    const ExamConfig &cfg,
                    const std::function<void(const ExamRecord &)> &on_exam = {})
    -> GenResult<decltype(trainer.snapshot())> {
  using Snapshot = decltype(trainer.snapshot());
  if (cfg.max_epochs < 1)
    throw Error("max_epochs must be positive");
  ExamMonitor monitor(cfg.margins(), cfg.patience);
  std::optional<Snapshot> streak_first, best;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    trainer.train_epoch(epoch);
    const Trainer &view = trainer;
    ExamRecord r = run_exam(
        [&](int n, std::uint64_t s) { return view.sample(n, s); }, checker,
        cfg.n_sample, split_seed(cfg.seed, static_cast<std::uint64_t>(epoch)));
    const ExamRecord &rec = monitor.observe(r);
    if (on_exam)
      on_exam(rec);

    if (rec.passed && rec.streak_after == 1)
      streak_first = trainer.snapshot();
    if (monitor.best_epoch() == epoch)
      best = trainer.snapshot();

    if (monitor.converged()) {
      GenResult<Snapshot> out { {}, std::move(*streak_first) };
      out.log.records = monitor.records();
      out.log.margins = monitor.margins();
      out.log.stopped_at_epoch = epoch;
      out.log.selected_epoch = *monitor.streak_start();
      out.log.converged = true;
      return out;
    }
  }

  GenResult<Snapshot> out { {}, std::move(*best) };
  out.log.records = monitor.records();
  out.log.margins = monitor.margins();
  out.log.stopped_at_epoch = cfg.max_epochs;
  out.log.selected_epoch = *monitor.best_epoch();
  out.log.converged = false;
  return out;
}

}  // namespace lgigen

#endif  // LGIGEN_EXAM_HPP_
