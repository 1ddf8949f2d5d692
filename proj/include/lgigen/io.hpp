//
// lgigen - text-based generative models for sparse graphs
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LGIGEN_IO_HPP_
#define LGIGEN_IO_HPP_

#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lgigen/error.hpp"

namespace lgigen {

/// Input files that are missing or malformed.
class InputError: public Error {
public:
  using Error::Error;
};

/// Lines of a text file, without line terminators. A final newline does
/// not start an extra line.
inline std::vector<std::string> read_lines(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw InputError("cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

inline void write_text(const std::filesystem::path &path, std::string_view text) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error("cannot write " + path.string());
  out << text;
  if (!out)
    throw Error("failed writing " + path.string());
}

/// One string per line, each terminated by '\n'.
inline void write_lines(const std::filesystem::path &path,
                        std::span<const std::string> lines) {
  std::string text;
  for (const auto &l: lines) {
    text += l;
    text += '\n';
  }
  write_text(path, text);
}

/// Flat configuration: `key = value` lines; blank lines and lines starting
/// with '#' are ignored. Later keys override earlier ones.
inline std::map<std::string, std::string> parse_key_values(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
      s.remove_prefix(1);
    while (!s.empty()
           && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
      s.remove_suffix(1);
    return s;
  };
  std::map<std::string, std::string> out;
  int lineno = 0;
  while (!text.empty()) {
    ++lineno;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view {} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#')
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos || trim(line.substr(0, eq)).empty()) {
      throw InputError("config line " + std::to_string(lineno)
                       + ": expected key = value");
    }
    out[std::string(trim(line.substr(0, eq)))] =
        std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

inline std::string format_key_values(
    const std::vector<std::pair<std::string, std::string>> &entries) {
  std::string out;
  for (const auto &[k, v]: entries)
    out += k + " = " + v + "\n";
  return out;
}

}  // namespace lgigen

#endif  // LGIGEN_IO_HPP_
