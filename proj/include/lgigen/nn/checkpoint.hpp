//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_NN_CHECKPOINT_HPP_
#define LGIGEN_NN_CHECKPOINT_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "lgigen/error.hpp"
#include "lgigen/exam.hpp"
#include "lgigen/nn/model.hpp"
#include "lgigen/nn/vocab.hpp"

// File layout, all integers little-endian:
//   8 bytes   magic "LGIGENCK"
//   u32       format version
//   u64       metadata length, then that many bytes of JSON
//   f64[]     every tensor in ModelParams storage order, column-major
//   u64       FNV-1a 64 hash of all preceding bytes

namespace lgigen::nn {

constexpr std::string_view kCheckpointMagic = "LGIGENCK";
constexpr std::uint32_t kCheckpointVersion = 1;

template <typename T>
struct Checkpoint {
  ModelParams<T> params;
  Vocabulary vocab;
  int epoch = 0;
  std::vector<ExamRecord> exam_history;
  bool converged = true;
  // Free-form run information (text format, degree domain, seeds).
  std::map<std::string, std::string> info;

  friend bool operator==(const Checkpoint &, const Checkpoint &) = default;
};

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c: bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace internal {
template <typename U>
void put_le(std::string &out, U value) {
  static_assert(std::is_unsigned_v<U>);
  for (std::size_t i = 0; i < sizeof(U); ++i)
    out.push_back(static_cast<char>((value >> (8 * i)) & 0xff));
}

template <typename U>
U get_le(std::string_view in, std::size_t at) {
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i)
    v |= static_cast<U>(static_cast<unsigned char>(in[at + i])) << (8 * i);
  return v;
}

inline nlohmann::json to_json(const ExamRecord &r) {
  return { { "epoch", r.epoch },
           { "sampled", r.sampled },
           { "valid_count", r.valid_count },
           { "validity_fraction", r.validity_fraction },
           { "passed", r.passed },
           { "streak_after", r.streak_after } };
}

inline ExamRecord exam_from_json(const nlohmann::json &j) {
  ExamRecord r;
  r.epoch = j.at("epoch").get<int>();
  r.sampled = j.at("sampled").get<int>();
  r.valid_count = j.at("valid_count").get<int>();
  r.validity_fraction = j.at("validity_fraction").get<double>();
  r.passed = j.at("passed").get<bool>();
  r.streak_after = j.at("streak_after").get<int>();
  return r;
}
}  // namespace internal

template <typename T>
std::string serialize_checkpoint(const Checkpoint<T> &ck) {
  nlohmann::json meta;
  const ModelShape &s = ck.params.shape;
  meta["shape"] = { { "vocab_size", s.vocab_size },
                    { "embed_hidden", s.embed_hidden },
                    { "encoder_hidden", s.encoder_hidden },
                    { "encoders", s.encoders },
                    { "norm_epsilon", s.norm_epsilon } };
  std::vector<int> chars;
  for (unsigned char c: ck.vocab.chars())
    chars.push_back(c);
  meta["vocabulary"] = chars;
  meta["epoch"] = ck.epoch;
  meta["converged"] = ck.converged;
  meta["info"] = ck.info;
  meta["exam_history"] = nlohmann::json::array();
  for (const auto &r: ck.exam_history)
    meta["exam_history"].push_back(internal::to_json(r));
  meta["tensors"] = nlohmann::json::array();
  ck.params.visit([&](const std::string &name, const auto &m) {
    meta["tensors"].push_back(
        { { "name", name }, { "rows", m.rows() }, { "cols", m.cols() } });
  });
  const std::string meta_text = meta.dump();

  std::string out(kCheckpointMagic);
  internal::put_le<std::uint32_t>(out, kCheckpointVersion);
  internal::put_le<std::uint64_t>(out, meta_text.size());
  out += meta_text;
  for (auto t: ck.params.tensors()) {
    for (T x: t)
      internal::put_le<std::uint64_t>(
          out, std::bit_cast<std::uint64_t>(static_cast<double>(x)));
  }
  internal::put_le<std::uint64_t>(out, fnv1a64(out));
  return out;
}

/// \throws CheckpointVersionError for a format version other than the
///         current one; CheckpointCorrupt for bad magic, truncation,
///         checksum mismatch or inconsistent metadata.
template <typename T>
Checkpoint<T> parse_checkpoint(std::string_view bytes) {
  const std::size_t head = kCheckpointMagic.size() + 4 + 8;
  if (bytes.size() < head + 8)
    throw CheckpointCorrupt("checkpoint truncated");
  if (bytes.substr(0, kCheckpointMagic.size()) != kCheckpointMagic)
    throw CheckpointCorrupt("not a checkpoint file");
  const auto version =
      internal::get_le<std::uint32_t>(bytes, kCheckpointMagic.size());
  if (version != kCheckpointVersion) {
    throw CheckpointVersionError("checkpoint format version "
                                 + std::to_string(version)
                                 + " is not supported (expected "
                                 + std::to_string(kCheckpointVersion) + ")");
  }
  const std::size_t body = bytes.size() - 8;
  if (internal::get_le<std::uint64_t>(bytes, body)
      != fnv1a64(bytes.substr(0, body)))
    throw CheckpointCorrupt("checkpoint checksum mismatch");

  const auto meta_len =
      internal::get_le<std::uint64_t>(bytes, kCheckpointMagic.size() + 4);
  if (meta_len > body - head)
    throw CheckpointCorrupt("checkpoint metadata overruns the file");

  Checkpoint<T> ck;
  try {
    auto meta = nlohmann::json::parse(bytes.substr(head, meta_len));
    const auto &js = meta.at("shape");
    ModelShape s;
    s.vocab_size = js.at("vocab_size").get<int>();
    s.embed_hidden = js.at("embed_hidden").get<int>();
    s.encoder_hidden = js.at("encoder_hidden").get<int>();
    s.encoders = js.at("encoders").get<int>();
    s.norm_epsilon = js.at("norm_epsilon").get<double>();
    ck.params = ModelParams<T>(s);

    std::string chars;
    for (int c: meta.at("vocabulary").get<std::vector<int>>())
      chars.push_back(static_cast<char>(c));
    ck.vocab = Vocabulary(chars);
    if (ck.vocab.size() != s.vocab_size)
      throw CheckpointCorrupt("vocabulary size disagrees with model shape");
    ck.epoch = meta.at("epoch").get<int>();
    ck.converged = meta.at("converged").get<bool>();
    ck.info = meta.at("info").get<std::map<std::string, std::string>>();
    for (const auto &r: meta.at("exam_history"))
      ck.exam_history.push_back(internal::exam_from_json(r));

    std::size_t k = 0;
    const auto &declared = meta.at("tensors");
    ck.params.visit([&](const std::string &name, const auto &m) {
      if (k >= declared.size() || declared[k].at("name") != name
          || declared[k].at("rows").template get<Eigen::Index>() != m.rows()
          || declared[k].at("cols").template get<Eigen::Index>() != m.cols())
        throw CheckpointCorrupt("tensor table disagrees with model shape");
      ++k;
    });
    if (k != declared.size())
      throw CheckpointCorrupt("unexpected tensors in checkpoint");
  } catch (const nlohmann::json::exception &e) {
    throw CheckpointCorrupt(std::string("bad checkpoint metadata: ") + e.what());
  } catch (const CheckpointError &) {
    throw;
  } catch (const Error &e) {
    throw CheckpointCorrupt(std::string("bad checkpoint metadata: ") + e.what());
  }

  std::size_t at = head + meta_len;
  if (body - at != ck.params.parameter_count() * 8)
    throw CheckpointCorrupt("tensor data has the wrong size");
  for (auto t: ck.params.tensors()) {
    for (T &x: t) {
      x = static_cast<T>(
          std::bit_cast<double>(internal::get_le<std::uint64_t>(bytes, at)));
      at += 8;
    }
  }
  return ck;
}

template <typename T>
void save_checkpoint(const std::filesystem::path &path, const Checkpoint<T> &ck) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw CheckpointError("cannot write " + path.string());
  const std::string bytes = serialize_checkpoint(ck);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw CheckpointError("failed writing " + path.string());
}

template <typename T>
Checkpoint<T> load_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CheckpointError("cannot read " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  return parse_checkpoint<T>(bytes);
}

}  // namespace lgigen::nn

#endif  // LGIGEN_NN_CHECKPOINT_HPP_
