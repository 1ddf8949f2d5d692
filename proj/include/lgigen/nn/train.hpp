//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_NN_TRAIN_HPP_
#define LGIGEN_NN_TRAIN_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "lgigen/error.hpp"
#include "lgigen/nn/model.hpp"
#include "lgigen/nn/vocab.hpp"
#include "lgigen/random.hpp"

namespace lgigen::nn {

struct TrainConfig {
  double learning_rate = 1e-3;
  int batch_size = 64;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  // Global gradient-norm clip; <= 0 disables clipping.
  double clip_norm = 5.0;
};

template <typename T>
struct AdamState {
  ModelParams<T> m, v;
  std::int64_t step = 0;

  AdamState() = default;

  explicit AdamState(const ModelShape &shape): m(shape), v(shape) { }
};

template <typename T>
double global_norm(const ModelParams<T> &g) {
  double sq = 0;
  for (auto t: g.tensors()) {
    for (T x: t)
      sq += static_cast<double>(x) * static_cast<double>(x);
  }
  return std::sqrt(sq);
}

/// Scales `g` so its global norm is at most `max_norm`. Returns the norm
/// before clipping.
template <typename T>
double clip_global_norm(ModelParams<T> &g, double max_norm) {
  const double norm = global_norm(g);
  if (max_norm > 0 && norm > max_norm) {
    const T s = static_cast<T>(max_norm / norm);
    for (auto t: g.tensors()) {
      for (T &x: t)
        x *= s;
    }
  }
  return norm;
}

template <typename T>
void adam_update(ModelParams<T> &p, const ModelParams<T> &g, AdamState<T> &st,
                 const TrainConfig &cfg) {
  ++st.step;
  const double c1 = 1 - std::pow(cfg.beta1, static_cast<double>(st.step));
  const double c2 = 1 - std::pow(cfg.beta2, static_cast<double>(st.step));
  const T b1 = static_cast<T>(cfg.beta1), b2 = static_cast<T>(cfg.beta2);
  const T lr = static_cast<T>(cfg.learning_rate / c1);
  const T inv_c2 = static_cast<T>(1 / c2);
  const T eps = static_cast<T>(cfg.adam_epsilon);

  auto tp = p.tensors();
  auto tg = g.tensors();
  auto tm = st.m.tensors();
  auto tv = st.v.tensors();
  for (std::size_t k = 0; k < tp.size(); ++k) {
    using Map = Eigen::Map<Eigen::Array<T, Eigen::Dynamic, 1>>;
    using CMap = Eigen::Map<const Eigen::Array<T, Eigen::Dynamic, 1>>;
    const auto n = static_cast<Eigen::Index>(tp[k].size());
    Map pk(tp[k].data(), n), mk(tm[k].data(), n), vk(tv[k].data(), n);
    CMap gk(tg[k].data(), n);
    mk = b1 * mk + (T(1) - b1) * gk;
    vk = b2 * vk + (T(1) - b2) * gk.square();
    pk -= lr * mk / ((vk * inv_c2).sqrt() + eps);
  }
}

/// Tokenizes every string; throws Error on characters outside `vocab`.
inline std::vector<std::vector<Token>> encode_corpus(
    const Vocabulary &vocab, std::span<const std::string> corpus) {
  std::vector<std::vector<Token>> out;
  out.reserve(corpus.size());
  for (const auto &s: corpus)
    out.push_back(vocab.encode(s));
  return out;
}

struct EpochStats {
  double mean_loss = 0;  // target-weighted over the epoch
  std::size_t targets = 0;
  std::size_t batches = 0;
};

/// Reusable buffers for training steps.
template <typename T>
struct TrainWorkspace {
  ModelParams<T> grads;
  ForwardCache<T> cache;

  explicit TrainWorkspace(const ModelShape &shape): grads(shape) { }
};

/// One optimizer step on a batch; returns its loss.
template <typename T>
LossInfo train_step(ModelParams<T> &p, const Batch &batch, AdamState<T> &st,
                    const TrainConfig &cfg, TrainWorkspace<T> &ws) {
  LossInfo info = loss_and_grads(p, batch, ws.grads, ws.cache);
  clip_global_norm(ws.grads, cfg.clip_norm);
  adam_update(p, ws.grads, st, cfg);
  return info;
}

/// One pass over `corpus` in mini-batches drawn from a seeded shuffle.
template <typename T>
EpochStats train_epoch(ModelParams<T> &p,
                       std::span<const std::vector<Token>> corpus,
                       AdamState<T> &st, const TrainConfig &cfg,
                       std::uint64_t shuffle_seed) {
  if (corpus.empty())
    throw Error("empty training corpus");
  if (cfg.batch_size < 1)
    throw Error("batch size must be positive");

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t { 0 });
  Rng rng(shuffle_seed);
  shuffle(std::span(order), rng);

  TrainWorkspace<T> ws(p.shape);
  EpochStats stats;
  double loss_sum = 0;
  std::vector<std::vector<Token>> chunk;
  for (std::size_t start = 0; start < order.size();
       start += static_cast<std::size_t>(cfg.batch_size)) {
    const std::size_t end =
        std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
    chunk.clear();
    for (std::size_t i = start; i < end; ++i)
      chunk.push_back(corpus[order[i]]);
    auto info = train_step(p, Batch::from(chunk), st, cfg, ws);
    loss_sum += info.loss * static_cast<double>(info.targets);
    stats.targets += info.targets;
    ++stats.batches;
  }
  stats.mean_loss =
      stats.targets ? loss_sum / static_cast<double>(stats.targets) : 0.0;
  return stats;
}

}  // namespace lgigen::nn

#endif  // LGIGEN_NN_TRAIN_HPP_
