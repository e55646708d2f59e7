#pragma once

#include <string>

#include "genusforge/io/json_util.hpp"
#include "genusforge/lattice/lattice.hpp"

namespace genusforge::lattice {

using io::json;

/// {"name": str, "gram": [[int, ...], ...]}
inline EvenLattice lattice_from_json(const json& j, const std::string& path = "") {
  const json& jg = io::require_array(io::require(j, "gram", path), path + "/gram");
  const std::size_t n = jg.size();
  IntMatrix g(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string rp = io::index_path(path + "/gram", r);
    const json& row = io::require_array(jg[r], rp);
    if (row.size() != n) throw ValidationError("at " + rp + ": expected " + std::to_string(n) + " entries");
    for (std::size_t c = 0; c < n; ++c) g(r, c) = Integer(static_cast<long>(io::to_int(row[c], io::index_path(rp, c))));
  }
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ValidationError("at " + path + "/name: expected a string");
    name = j["name"].get<std::string>();
  }
  return EvenLattice(g, name);
}

inline json lattice_to_json(const EvenLattice& l) {
  json rows = json::array();
  for (std::size_t i = 0; i < l.rank(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < l.rank(); ++j) r.push_back(l.gram()(i, j).get_si());
    rows.push_back(r);
  }
  return json{{"name", l.name()}, {"gram", rows}};
}

}  // namespace genusforge::lattice
