//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_NN_TRAINER_HPP_
#define LGIGEN_NN_TRAINER_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lgigen/error.hpp"
#include "lgigen/nn/model.hpp"
#include "lgigen/nn/sample.hpp"
#include "lgigen/nn/train.hpp"
#include "lgigen/nn/vocab.hpp"
#include "lgigen/random.hpp"

namespace lgigen::nn {

/// Adapts a generator model to gen_train_loop. Initialization uses
/// split_seed(seed, streams::kInit); the epoch-e shuffle uses
/// split_seed(split_seed(seed, streams::kShuffle), e).
template <typename T>
class ModelTrainer {
public:
  struct Snapshot {
    ModelParams<T> params;
    int epoch = 0;
  };

  ModelTrainer(std::span<const std::string> corpus, ModelShape shape,
               TrainConfig train, SampleOptions sampling, std::uint64_t seed)
      : vocab_(Vocabulary::build(corpus)),
        tokens_(encode_corpus(vocab_, corpus)),
        train_(train),
        sampling_(sampling),
        seed_(seed) {
    shape.vocab_size = vocab_.size();
    params_ = init_params<T>(shape, split_seed(seed, streams::kInit));
    adam_ = AdamState<T>(shape);
  }

  void train_epoch(int epoch) {
    last_ = nn::train_epoch(
        params_, std::span<const std::vector<Token>>(tokens_), adam_, train_,
        split_seed(split_seed(seed_, streams::kShuffle),
                   static_cast<std::uint64_t>(epoch)));
    epoch_ = epoch;
  }

  std::vector<std::string> sample(int n, std::uint64_t seed) const {
    return sample_strings(params_, vocab_, n, seed, sampling_);
  }

  Snapshot snapshot() const { return { params_, epoch_ }; }

  const ModelParams<T> &params() const { return params_; }

  const Vocabulary &vocab() const { return vocab_; }

  const EpochStats &last_epoch() const { return last_; }

private:
  Vocabulary vocab_;
  std::vector<std::vector<Token>> tokens_;
  TrainConfig train_;
  SampleOptions sampling_;
  std::uint64_t seed_;
  ModelParams<T> params_;
  AdamState<T> adam_;
  EpochStats last_;
  int epoch_ = 0;
};

}  // namespace lgigen::nn

#endif  // LGIGEN_NN_TRAINER_HPP_
