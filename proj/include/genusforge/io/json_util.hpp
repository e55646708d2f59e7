#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "genusforge/errors.hpp"
#include "genusforge/exact/rational.hpp"
#include "json.hpp"

namespace genusforge::io {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ValidationError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ValidationError("at " + path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError("at " + path + ": missing field '" + key + "'");
  return *it;
}

inline const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError("at " + path + ": expected an array");
  return j;
}

inline std::int64_t to_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError("at " + path + ": expected an integer");
  return j.get<std::int64_t>();
}

/// Accepts an integer or a string "a" / "a/b".
inline exact::Rational to_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return exact::Rational(j.get<std::int64_t>());
  if (!j.is_string()) throw ValidationError("at " + path + ": expected a rational string \"a/b\"");
  try {
    return exact::Rational::parse(j.get<std::string>());
  } catch (const ValidationError& e) {
    throw ValidationError("at " + path + ": " + e.what());
  }
}

inline std::string index_path(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

}  // namespace genusforge::io
