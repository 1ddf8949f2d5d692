//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_NN_MODEL_HPP_
#define LGIGEN_NN_MODEL_HPP_

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "lgigen/error.hpp"
#include "lgigen/nn/lstm.hpp"
#include "lgigen/nn/vocab.hpp"
#include "lgigen/random.hpp"

// Generator network: one-hot tokens feed an embedding LSTM, whose output
// sequence feeds several parallel encoder LSTMs. Each encoder's hidden state
// is layer-normalized per step; the normalized states are concatenated and
// projected to logits over the vocabulary.

namespace lgigen::nn {

struct ModelShape {
  int vocab_size = 0;
  int embed_hidden = 128;
  int encoder_hidden = 64;
  int encoders = 4;
  double norm_epsilon = 1e-5;

  int concat_width() const { return encoders * encoder_hidden; }

  friend bool operator==(const ModelShape &, const ModelShape &) = default;
};

template <typename T>
struct ModelParams {
  ModelShape shape;
  LstmParams<T> embed;
  std::vector<LstmParams<T>> encoders;
  std::vector<Vec<T>> norm_gain, norm_bias;
  Mat<T> out_w;
  Vec<T> out_b;

  ModelParams() = default;

  /// All tensors zero, gains included.
  explicit ModelParams(const ModelShape &s)
      : shape(s), embed(s.vocab_size, s.embed_hidden),
        out_w(Mat<T>::Zero(s.vocab_size, s.concat_width())),
        out_b(Vec<T>::Zero(s.vocab_size)) {
    if (s.vocab_size < Vocabulary::kReserved + 1 || s.embed_hidden < 1
        || s.encoder_hidden < 1 || s.encoders < 1)
      throw Error("invalid model shape");
    for (int k = 0; k < s.encoders; ++k) {
      encoders.emplace_back(s.embed_hidden, s.encoder_hidden);
      norm_gain.push_back(Vec<T>::Zero(s.encoder_hidden));
      norm_bias.push_back(Vec<T>::Zero(s.encoder_hidden));
    }
  }

  /// Calls f(name, tensor) for every tensor in storage order.
  template <typename F>
  void visit(F &&f) {
    visit_impl(*this, f);
  }

  template <typename F>
  void visit(F &&f) const {
    visit_impl(*this, f);
  }

  /// Flat views of every tensor in storage order.
  std::vector<std::span<T>> tensors() {
    std::vector<std::span<T>> out;
    visit([&](const std::string &, auto &m) {
      out.emplace_back(m.data(), static_cast<std::size_t>(m.size()));
    });
    return out;
  }

  std::vector<std::span<const T>> tensors() const {
    std::vector<std::span<const T>> out;
    visit([&](const std::string &, const auto &m) {
      out.emplace_back(m.data(), static_cast<std::size_t>(m.size()));
    });
    return out;
  }

  std::size_t parameter_count() const {
    std::size_t n = 0;
    for (auto t: tensors())
      n += t.size();
    return n;
  }

  void set_zero() {
    for (auto t: tensors())
      std::fill(t.begin(), t.end(), T(0));
  }

  template <typename U>
  ModelParams<U> cast() const {
    ModelParams<U> out(shape);
    auto src = tensors();
    auto dst = out.tensors();
    for (std::size_t i = 0; i < src.size(); ++i) {
      for (std::size_t j = 0; j < src[i].size(); ++j)
        dst[i][j] = static_cast<U>(src[i][j]);
    }
    return out;
  }

  friend bool operator==(const ModelParams &a, const ModelParams &b) {
    if (!(a.shape == b.shape))
      return false;
    auto ta = a.tensors(), tb = b.tensors();
    for (std::size_t i = 0; i < ta.size(); ++i) {
      if (!std::equal(ta[i].begin(), ta[i].end(), tb[i].begin(), tb[i].end()))
        return false;
    }
    return true;
  }

private:
  template <typename Self, typename F>
  static void visit_impl(Self &self, F &f) {
    f(std::string("embed.wx"), self.embed.wx);
    f(std::string("embed.wh"), self.embed.wh);
    f(std::string("embed.b"), self.embed.b);
    for (std::size_t k = 0; k < self.encoders.size(); ++k) {
      const std::string p = "encoder" + std::to_string(k);
      f(p + ".wx", self.encoders[k].wx);
      f(p + ".wh", self.encoders[k].wh);
      f(p + ".b", self.encoders[k].b);
    }
    for (std::size_t k = 0; k < self.norm_gain.size(); ++k) {
      const std::string p = "norm" + std::to_string(k);
      f(p + ".gain", self.norm_gain[k]);
      f(p + ".bias", self.norm_bias[k]);
    }
    f(std::string("output.w"), self.out_w);
    f(std::string("output.b"), self.out_b);
  }
};

namespace internal {
template <typename T>
void init_lstm(LstmParams<T> &p, Rng &rng) {
  const double ax = 1 / std::sqrt(static_cast<double>(p.input_size()));
  const double ah = 1 / std::sqrt(static_cast<double>(p.hidden_size()));
  for (Eigen::Index i = 0; i < p.wx.size(); ++i)
    p.wx.data()[i] = static_cast<T>((2 * uniform01(rng) - 1) * ax);
  for (Eigen::Index i = 0; i < p.wh.size(); ++i)
    p.wh.data()[i] = static_cast<T>((2 * uniform01(rng) - 1) * ah);
  p.b.setZero();
  p.b.segment(p.hidden_size(), p.hidden_size()).setOnes();
}
}  // namespace internal

/// Weights uniform in +-1/sqrt(fan_in), LSTM biases zero except the forget
/// gate (1), layer-norm gain 1 and bias 0. Draws are made in double so float
/// and double models from the same seed agree up to rounding.
template <typename T>
ModelParams<T> init_params(const ModelShape &shape, std::uint64_t seed) {
  ModelParams<T> p(shape);
  Rng rng(seed);
  internal::init_lstm(p.embed, rng);
  for (auto &e: p.encoders)
    internal::init_lstm(e, rng);
  for (auto &g: p.norm_gain)
    g.setOnes();
  const double ao = 1 / std::sqrt(static_cast<double>(shape.concat_width()));
  for (Eigen::Index i = 0; i < p.out_w.size(); ++i)
    p.out_w.data()[i] = static_cast<T>((2 * uniform01(rng) - 1) * ao);
  return p;
}

/// Token block for teacher forcing: inputs are seq[0..L-2], targets
/// seq[1..L-1], padded with PAD to the longest sequence.
struct Batch {
  int steps = 0;
  int size = 0;
  std::vector<Token> input;   // steps * size, column t * size + j
  std::vector<Token> target;  // PAD where masked
  std::size_t target_count = 0;

  static Batch from(std::span<const std::vector<Token>> seqs) {
    if (seqs.empty())
      throw Error("empty batch");
    Batch b;
    b.size = static_cast<int>(seqs.size());
    for (const auto &s: seqs) {
      if (s.size() < 2)
        throw Error("sequence needs at least two tokens");
      b.steps = std::max(b.steps, static_cast<int>(s.size()) - 1);
    }
    const std::size_t cols = static_cast<std::size_t>(b.steps) * b.size;
    b.input.assign(cols, Vocabulary::kPad);
    b.target.assign(cols, Vocabulary::kPad);
    for (int j = 0; j < b.size; ++j) {
      const auto &s = seqs[j];
      for (std::size_t t = 0; t + 1 < s.size(); ++t) {
        b.input[t * b.size + j] = s[t];
        b.target[t * b.size + j] = s[t + 1];
        b.target_count += s[t + 1] != Vocabulary::kPad;
      }
    }
    return b;
  }
};

/// Intermediate values of one forward pass, kept for backpropagation.
template <typename T>
struct ForwardCache {
  LstmTrace<T> embed;
  std::vector<LstmTrace<T>> encoders;
  std::vector<Mat<T>> normalized;  // pre-gain normalized states
  std::vector<Vec<T>> inv_std;     // per column
  Mat<T> concat;                   // post-gain, stacked by encoder
  Mat<T> probs;                    // softmax output, vocab x columns
};

namespace internal {
template <typename T>
void check_tokens(const ModelShape &shape, std::span<const Token> tokens) {
  for (Token t: tokens) {
    if (t < 0 || t >= shape.vocab_size)
      throw Error("token " + std::to_string(t) + " outside vocabulary");
  }
}

// Column-wise softmax in place.
template <typename T>
void softmax_columns(Mat<T> &z) {
  for (Eigen::Index j = 0; j < z.cols(); ++j) {
    auto col = z.col(j);
    col.array() = (col.array() - col.maxCoeff()).exp();
    col /= col.sum();
  }
}
}  // namespace internal

/// Forward pass over a batch; fills `cache` and returns nothing else.
template <typename T>
void forward(const ModelParams<T> &p, const Batch &batch, ForwardCache<T> &cache) {
  const ModelShape &s = p.shape;
  internal::check_tokens<T>(s, batch.input);
  const int B = batch.size, steps = batch.steps;
  const Eigen::Index cols = static_cast<Eigen::Index>(steps) * B;

  Mat<T> xproj(4 * s.embed_hidden, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    xproj.col(j) = p.embed.wx.col(batch.input[j]) + p.embed.b;
  lstm_forward(p.embed, xproj, steps, B, cache.embed);

  const int He = s.encoder_hidden;
  cache.encoders.resize(s.encoders);
  cache.normalized.resize(s.encoders);
  cache.inv_std.resize(s.encoders);
  cache.concat.resize(s.concat_width(), cols);
  for (int k = 0; k < s.encoders; ++k) {
    const auto &e = p.encoders[k];
    xproj.resize(4 * He, cols);
    xproj.noalias() = e.wx * cache.embed.h;
    xproj.colwise() += e.b;
    lstm_forward(e, xproj, steps, B, cache.encoders[k]);

    const Mat<T> &h = cache.encoders[k].h;
    Mat<T> &xhat = cache.normalized[k];
    Vec<T> &inv = cache.inv_std[k];
    xhat.resize(He, cols);
    inv.resize(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const T mean = h.col(j).mean();
      const auto centered = h.col(j).array() - mean;
      const T var = centered.square().mean();
      inv[j] = T(1) / std::sqrt(var + static_cast<T>(s.norm_epsilon));
      xhat.col(j) = (centered * inv[j]).matrix();
    }
    cache.concat.middleRows(k * He, He) =
        ((xhat.array().colwise() * p.norm_gain[k].array()).colwise()
         + p.norm_bias[k].array())
            .matrix();
  }

  cache.probs.resize(s.vocab_size, cols);
  cache.probs.noalias() = p.out_w * cache.concat;
  cache.probs.colwise() += p.out_b;
  internal::softmax_columns(cache.probs);
}

/// Next-token distributions for one token sequence: column t is the
/// distribution of token t + 1 given tokens 0..t.
template <typename T>
Mat<T> predict(const ModelParams<T> &p, std::span<const Token> tokens) {
  if (tokens.empty())
    throw Error("empty token sequence");
  Batch b;
  b.steps = static_cast<int>(tokens.size());
  b.size = 1;
  b.input.assign(tokens.begin(), tokens.end());
  b.target.assign(tokens.size(), Vocabulary::kPad);
  ForwardCache<T> cache;
  forward(p, b, cache);
  return cache.probs;
}

struct LossInfo {
  double loss = 0;  // mean cross-entropy in nats over non-PAD targets
  std::size_t targets = 0;
};

/// Mean next-token cross-entropy of `batch`, from a completed forward pass.
template <typename T>
LossInfo batch_loss(const ForwardCache<T> &cache, const Batch &batch) {
  LossInfo info;
  double sum = 0;
  for (std::size_t j = 0; j < batch.target.size(); ++j) {
    const Token y = batch.target[j];
    if (y == Vocabulary::kPad)
      continue;
    sum -= std::log(static_cast<double>(cache.probs(y, j)));
    ++info.targets;
  }
  info.loss = info.targets ? sum / static_cast<double>(info.targets) : 0.0;
  return info;
}

/// Loss and gradients by full backpropagation through time. `grads` is
/// overwritten and must have the shape of `p`.
template <typename T>
LossInfo loss_and_grads(const ModelParams<T> &p, const Batch &batch,
                        ModelParams<T> &grads, ForwardCache<T> &cache) {
  if (batch.size == 0)
    throw Error("empty batch");
  forward(p, batch, cache);
  LossInfo info = batch_loss(cache, batch);
  grads.set_zero();
  if (info.targets == 0)
    return info;

  const ModelShape &s = p.shape;
  const int B = batch.size, steps = batch.steps, He = s.encoder_hidden;
  const Eigen::Index cols = static_cast<Eigen::Index>(steps) * B;
  const T scale = T(1) / static_cast<T>(info.targets);

  Mat<T> dlogits = cache.probs;
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Token y = batch.target[j];
    if (y == Vocabulary::kPad) {
      dlogits.col(j).setZero();
    } else {
      dlogits(y, j) -= T(1);
      dlogits.col(j) *= scale;
    }
  }
  grads.out_w.noalias() = dlogits * cache.concat.transpose();
  grads.out_b = dlogits.rowwise().sum();
  Mat<T> dconcat(s.concat_width(), cols);
  dconcat.noalias() = p.out_w.transpose() * dlogits;

  Mat<T> dembed = Mat<T>::Zero(s.embed_hidden, cols);
  Mat<T> dh(He, cols), da;
  for (int k = 0; k < s.encoders; ++k) {
    const auto dy = dconcat.middleRows(k * He, He);
    const Mat<T> &xhat = cache.normalized[k];
    grads.norm_gain[k] = (dy.array() * xhat.array()).rowwise().sum().matrix();
    grads.norm_bias[k] = dy.rowwise().sum();

    // Layer-norm backward, column by column.
    const T n = static_cast<T>(He);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const auto dx = (dy.col(j).array() * p.norm_gain[k].array()).eval();
      const T sum_dx = dx.sum();
      const T sum_dx_x = (dx * xhat.col(j).array()).sum();
      dh.col(j) = ((n * dx - sum_dx - xhat.col(j).array() * sum_dx_x)
                   * (cache.inv_std[k][j] / n))
                      .matrix();
    }

    const auto &e = p.encoders[k];
    auto &ge = grads.encoders[k];
    lstm_backward(e, cache.encoders[k], dh, steps, B, da, ge.wh);
    ge.wx.noalias() = da * cache.embed.h.transpose();
    ge.b = da.rowwise().sum();
    dembed.noalias() += e.wx.transpose() * da;
  }

  lstm_backward(p.embed, cache.embed, dembed, steps, B, da, grads.embed.wh);
  for (Eigen::Index j = 0; j < cols; ++j)
    grads.embed.wx.col(batch.input[j]) += da.col(j);
  grads.embed.b = da.rowwise().sum();
  return info;
}

template <typename T>
LossInfo loss_and_grads(const ModelParams<T> &p, const Batch &batch,
                        ModelParams<T> &grads) {
  ForwardCache<T> cache;
  return loss_and_grads(p, batch, grads, cache);
}

/// Mean loss without gradients.
template <typename T>
LossInfo evaluate_loss(const ModelParams<T> &p, const Batch &batch) {
  ForwardCache<T> cache;
  forward(p, batch, cache);
  return batch_loss(cache, batch);
}

}  // namespace lgigen::nn

#endif  // LGIGEN_NN_MODEL_HPP_
