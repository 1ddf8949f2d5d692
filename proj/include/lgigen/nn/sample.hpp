//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_NN_SAMPLE_HPP_
#define LGIGEN_NN_SAMPLE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "lgigen/error.hpp"
#include "lgigen/nn/model.hpp"
#include "lgigen/nn/vocab.hpp"
#include "lgigen/random.hpp"

namespace lgigen::nn {

struct SampleOptions {
  int max_length = 100;
  double temperature = 1.0;
};

namespace internal {
// Recurrent state of a batch of sampling streams.
template <typename T>
class StepState {
public:
  StepState(const ModelParams<T> &p, int batch): p_(p), batch_(batch) {
    const auto &s = p.shape;
    h1_ = Mat<T>::Zero(s.embed_hidden, batch);
    c1_ = h1_;
    for (int k = 0; k < s.encoders; ++k) {
      hk_.push_back(Mat<T>::Zero(s.encoder_hidden, batch));
      ck_.push_back(hk_.back());
    }
    concat_.resize(s.concat_width(), batch);
    logits_.resize(s.vocab_size, batch);
  }

  // Advances every stream by one input token; returns logits.
  const Mat<T> &step(const std::vector<Token> &input) {
    const auto &s = p_.shape;
    a1_.resize(4 * s.embed_hidden, batch_);
    for (int j = 0; j < batch_; ++j)
      a1_.col(j) = p_.embed.wx.col(input[j]) + p_.embed.b;
    a1_.noalias() += p_.embed.wh * h1_;
    cell(a1_, h1_, c1_);

    const int He = s.encoder_hidden;
    for (int k = 0; k < s.encoders; ++k) {
      const auto &e = p_.encoders[k];
      ak_.resize(4 * He, batch_);
      ak_.noalias() = e.wx * h1_;
      ak_.colwise() += e.b;
      ak_.noalias() += e.wh * hk_[k];
      cell(ak_, hk_[k], ck_[k]);
      for (int j = 0; j < batch_; ++j) {
        const T mean = hk_[k].col(j).mean();
        const auto centered = hk_[k].col(j).array() - mean;
        const T inv = T(1)
                      / std::sqrt(centered.square().mean()
                                  + static_cast<T>(s.norm_epsilon));
        concat_.col(j).segment(k * He, He) =
            (centered * inv * p_.norm_gain[k].array() + p_.norm_bias[k].array())
                .matrix();
      }
    }
    logits_.noalias() = p_.out_w * concat_;
    logits_.colwise() += p_.out_b;
    return logits_;
  }

private:
  static void cell(const Mat<T> &a, Mat<T> &h, Mat<T> &c) {
    const Eigen::Index H = h.rows();
    const auto i = sigmoid(a.topRows(H).array());
    const auto f = sigmoid(a.middleRows(H, H).array());
    const auto g = a.middleRows(2 * H, H).array().tanh();
    const auto o = sigmoid(a.bottomRows(H).array());
    c = (f * c.array() + i * g).matrix();
    h = (o * c.array().tanh()).matrix();
  }

  const ModelParams<T> &p_;
  int batch_;
  Mat<T> h1_, c1_, a1_, ak_, concat_, logits_;
  std::vector<Mat<T>> hk_, ck_;
};

// Draws an index from softmax(logits / temperature) with one uniform.
template <typename T>
Token draw(const Eigen::Ref<const Vec<T>> &logits, double temperature,
           Rng &rng) {
  const Eigen::Index V = logits.size();
  std::vector<double> w(V);
  double top = -INFINITY;
  for (Eigen::Index i = 0; i < V; ++i)
    top = std::max(top, static_cast<double>(logits[i]) / temperature);
  double sum = 0;
  for (Eigen::Index i = 0; i < V; ++i) {
    w[i] = std::exp(static_cast<double>(logits[i]) / temperature - top);
    sum += w[i];
  }
  double u = uniform01(rng) * sum;
  for (Eigen::Index i = 0; i < V; ++i) {
    if (u < w[i])
      return static_cast<Token>(i);
    u -= w[i];
  }
  for (Eigen::Index i = V; i-- > 0;) {
    if (w[i] > 0)
      return static_cast<Token>(i);
  }
  return Vocabulary::kEos;
}
}  // namespace internal

/// Generates `count` strings autoregressively. Stream i draws from
/// Rng(split_seed(seed, i)), so each string depends only on the parameters,
/// the seed and i. A stream ends at EOS, at any other reserved token, or
/// after max_length characters.
template <typename T>
std::vector<std::string> sample_strings(const ModelParams<T> &p,
                                        const Vocabulary &vocab, int count,
                                        std::uint64_t seed,
                                        const SampleOptions &opts = {},
                                        int streams_per_pass = 256) {
  if (opts.max_length < 1)
    throw Error("max_length must be >= 1");
  if (!(opts.temperature > 0))
    throw Error("temperature must be positive");
  if (vocab.size() != p.shape.vocab_size)
    throw Error("vocabulary does not match the model");

  std::vector<std::string> out(count > 0 ? count : 0);
  for (int first = 0; first < count; first += streams_per_pass) {
    const int B = std::min(streams_per_pass, count - first);
    internal::StepState<T> state(p, B);
    std::vector<Rng> rngs;
    for (int j = 0; j < B; ++j)
      rngs.emplace_back(split_seed(seed, static_cast<std::uint64_t>(first + j)));
    std::vector<Token> input(B, Vocabulary::kBos);
    std::vector<char> done(B, 0);
    int live = B;
    for (int len = 0; len < opts.max_length && live > 0; ++len) {
      const Mat<T> &logits = state.step(input);
      for (int j = 0; j < B; ++j) {
        if (done[j]) {
          input[j] = Vocabulary::kPad;
          continue;
        }
        const Token t = internal::draw<T>(logits.col(j), opts.temperature, rngs[j]);
        if (t < Vocabulary::kReserved) {
          done[j] = 1;
          --live;
          input[j] = Vocabulary::kPad;
        } else {
          out[first + j].push_back(vocab.character(t));
          input[j] = t;
        }
      }
    }
  }
  return out;
}

template <typename T>
std::string sample_string(const ModelParams<T> &p, const Vocabulary &vocab,
                          std::uint64_t seed, const SampleOptions &opts = {}) {
  return sample_strings(p, vocab, 1, seed, opts).front();
}

}  // namespace lgigen::nn

#endif  // LGIGEN_NN_SAMPLE_HPP_
