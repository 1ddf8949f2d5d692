//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_RANDOM_HPP_
#define LGIGEN_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace lgigen {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives the seed of a named substream from a parent seed.
///
/// Every random decision in the library is driven by a seed obtained by
/// splitting a single root seed: `split_seed(root, stream)` for the stream-th
/// child. Children of the same parent are decorrelated, and a child seed
/// depends only on (parent, stream), never on evaluation order.
constexpr std::uint64_t split_seed(std::uint64_t parent,
                                   std::uint64_t stream) noexcept {
  return splitmix64(parent ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Well-known stream identifiers used when splitting a run's root seed.
namespace streams {
constexpr std::uint64_t kCorpus = 1;
constexpr std::uint64_t kInit = 2;
constexpr std::uint64_t kShuffle = 3;
constexpr std::uint64_t kExam = 4;
constexpr std::uint64_t kSample = 5;
constexpr std::uint64_t kSynthetic = 6;
}  // namespace streams

// The standard distributions are implementation-defined; these are not, so
// seeded results are identical across standard libraries.

/// Uniform integer in [0, bound). bound must be > 0.
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t bound) {
  const std::uint64_t limit = Rng::max() - Rng::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline int uniform_int(Rng &rng, int lo, int hi) {
  return lo
         + static_cast<int>(
             uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <class T>
void shuffle(std::span<T> items, Rng &rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_below(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace lgigen

#endif  // LGIGEN_RANDOM_HPP_
