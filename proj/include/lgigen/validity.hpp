//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_VALIDITY_HPP_
#define LGIGEN_VALIDITY_HPP_

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace lgigen {

enum class FailureKind {
  // LGI
  kLexicalError,
  kSyntaxError,
  kUnmatchedBracket,
  kUnmatchedRingIndex,
  kDegreeMismatch,
  kDuplicateEdge,
  kSelfLoop,
  // g6
  kBadLength,
  kCharOutOfRange,
  kNonzeroPadding,
  kUnsupportedSize,
  kOutOfDomainDegree,
};

constexpr std::string_view to_string(FailureKind kind) {
  switch (kind) {
  case FailureKind::kLexicalError:
    return "LexicalError";
  case FailureKind::kSyntaxError:
    return "SyntaxError";
  case FailureKind::kUnmatchedBracket:
    return "UnmatchedBracket";
  case FailureKind::kUnmatchedRingIndex:
    return "UnmatchedRingIndex";
  case FailureKind::kDegreeMismatch:
    return "DegreeMismatch";
  case FailureKind::kDuplicateEdge:
    return "DuplicateEdge";
  case FailureKind::kSelfLoop:
    return "SelfLoop";
  case FailureKind::kBadLength:
    return "BadLength";
  case FailureKind::kCharOutOfRange:
    return "CharOutOfRange";
  case FailureKind::kNonzeroPadding:
    return "NonzeroPadding";
  case FailureKind::kUnsupportedSize:
    return "UnsupportedSize";
  case FailureKind::kOutOfDomainDegree:
    return "OutOfDomainDegree";
  }
  return "Unknown";
}

struct Failure {
  FailureKind kind;
  // Character offset into the input, or -1.
  int position = -1;
  // Vertex for degree failures, ring index for ring failures, else -1.
  int subject = -1;
  int declared = -1;
  int actual = -1;
  std::string detail;
};

struct ValidityReport {
  std::vector<Failure> failures;

  bool valid() const { return failures.empty(); }

  bool has(FailureKind kind) const {
    return std::any_of(failures.begin(), failures.end(),
                       [kind](const Failure &f) { return f.kind == kind; });
  }

  std::string summary() const {
    if (valid())
      return "valid";
    std::string s;
    for (const auto &f: failures) {
      if (!s.empty())
        s += "; ";
      s += to_string(f.kind);
      if (!f.detail.empty()) {
        s += ": ";
        s += f.detail;
      }
    }
    return s;
  }
};

}  // namespace lgigen

#endif  // LGIGEN_VALIDITY_HPP_
