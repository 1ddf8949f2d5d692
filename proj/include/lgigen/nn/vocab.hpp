//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_NN_VOCAB_HPP_
#define LGIGEN_NN_VOCAB_HPP_

#include <array>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgigen/error.hpp"

namespace lgigen::nn {

using Token = int;

/// Character vocabulary. Indices 0..2 are reserved for PAD, BOS and EOS;
/// corpus characters follow in ascending byte order.
class Vocabulary {
public:
  static constexpr Token kPad = 0;
  static constexpr Token kBos = 1;
  static constexpr Token kEos = 2;
  static constexpr int kReserved = 3;

  Vocabulary() { index_.fill(-1); }

  /// \throws Error if `chars` repeats a character.
  explicit Vocabulary(std::string chars): chars_(std::move(chars)) {
    index_.fill(-1);
    for (std::size_t i = 0; i < chars_.size(); ++i) {
      auto &slot = index_[static_cast<unsigned char>(chars_[i])];
      if (slot != -1)
        throw Error("duplicate vocabulary character");
      slot = kReserved + static_cast<Token>(i);
    }
  }

  /// \throws Error on an empty corpus.
  static Vocabulary build(std::span<const std::string> corpus) {
    if (corpus.empty())
      throw Error("cannot build a vocabulary from an empty corpus");
    std::set<unsigned char> seen;
    for (const auto &s: corpus)
      seen.insert(s.begin(), s.end());
    return Vocabulary(std::string(seen.begin(), seen.end()));
  }

  int size() const { return kReserved + static_cast<int>(chars_.size()); }

  /// Corpus characters in index order.
  const std::string &chars() const { return chars_; }

  bool contains(char c) const {
    return index_[static_cast<unsigned char>(c)] != -1;
  }

  /// \throws Error for characters outside the vocabulary.
  Token index(char c) const {
    const Token t = index_[static_cast<unsigned char>(c)];
    if (t < 0)
      throw Error(std::string("character '") + c + "' not in vocabulary");
    return t;
  }

  /// \throws Error for reserved or out-of-range tokens.
  char character(Token t) const {
    if (t < kReserved || t >= size())
      throw Error("token " + std::to_string(t) + " has no character");
    return chars_[t - kReserved];
  }

  /// BOS, the characters of `text`, EOS.
  std::vector<Token> encode(std::string_view text) const {
    std::vector<Token> out;
    out.reserve(text.size() + 2);
    out.push_back(kBos);
    for (char c: text)
      out.push_back(index(c));
    out.push_back(kEos);
    return out;
  }

  /// Characters of `tokens`, skipping reserved markers.
  std::string decode(std::span<const Token> tokens) const {
    std::string out;
    for (Token t: tokens) {
      if (t >= kReserved)
        out.push_back(character(t));
    }
    return out;
  }

  friend bool operator==(const Vocabulary &a, const Vocabulary &b) {
    return a.chars_ == b.chars_;
  }

private:
  std::string chars_;
  std::array<Token, 256> index_;
};

}  // namespace lgigen::nn

#endif  // LGIGEN_NN_VOCAB_HPP_
