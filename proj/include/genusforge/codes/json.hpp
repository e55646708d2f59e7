#pragma once

#include <string>
#include <vector>

#include "genusforge/codes/code.hpp"
#include "genusforge/io/json_util.hpp"

namespace genusforge::codes {

using io::json;

/// Character i of the string is coordinate i.
inline std::string to_bitstring(Word w, int n) {
  std::string s(static_cast<std::size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (w >> i & 1) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

inline Word from_bitstring(const std::string& s, int n, const std::string& path) {
  if (static_cast<int>(s.size()) != n)
    throw ValidationError("at " + path + ": expected " + std::to_string(n) + " bits, got " + std::to_string(s.size()));
  Word w = 0;
  for (int i = 0; i < n; ++i) {
    const char ch = s[static_cast<std::size_t>(i)];
    if (ch == '1') w |= Word(1) << i;
    else if (ch != '0') throw ValidationError("at " + path + ": bitstring may contain only '0' and '1'");
  }
  return w;
}

/// {"length": n, "basis": ["0101...", ...]}
inline BinaryCode code_from_json(const json& j, const std::string& path = "") {
  const std::int64_t n = io::to_int(io::require(j, "length", path), path + "/length");
  if (n < 0 || n > kMaxLength) throw ValidationError("at " + path + "/length: must lie in [0, 64]");
  const json& jb = io::require_array(io::require(j, "basis", path), path + "/basis");
  std::vector<Word> rows;
  for (std::size_t i = 0; i < jb.size(); ++i) {
    const std::string p = io::index_path(path + "/basis", i);
    if (!jb[i].is_string()) throw ValidationError("at " + p + ": expected a bitstring");
    rows.push_back(from_bitstring(jb[i].get<std::string>(), static_cast<int>(n), p));
  }
  return BinaryCode(static_cast<int>(n), rows);
}

inline json code_to_json(const BinaryCode& c) {
  json b = json::array();
  for (Word r : c.basis()) b.push_back(to_bitstring(r, c.length()));
  return json{{"length", c.length()}, {"basis", b}};
}

inline json framed_report_to_json(const FramedReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}});
  return json{{"all_passed", r.all_passed()}, {"checks", checks}};
}

}  // namespace genusforge::codes
