#pragma once

#include <vector>

#include "genusforge/io/json_util.hpp"
#include "genusforge/quadspace/space.hpp"
#include "genusforge/quadspace/subgroups.hpp"

namespace genusforge::quadspace {

using io::json;

/// {"orders": [...], "q": ["a/b", ...], "b": [[...], ...]}. Without "b" the
/// generators are taken to be mutually orthogonal.
inline FiniteQuadraticSpace space_from_json(const json& j, const std::string& path = "") {
  const json& jo = io::require_array(io::require(j, "orders", path), path + "/orders");
  const json& jq = io::require_array(io::require(j, "q", path), path + "/q");
  std::vector<std::int64_t> orders;
  for (std::size_t i = 0; i < jo.size(); ++i) orders.push_back(io::to_int(jo[i], io::index_path(path + "/orders", i)));
  std::vector<PhaseMod2> q;
  for (std::size_t i = 0; i < jq.size(); ++i) q.emplace_back(io::to_rational(jq[i], io::index_path(path + "/q", i)));
  if (q.size() != orders.size()) throw ValidationError("at " + path + "/q: expected " + std::to_string(orders.size()) + " entries");
  const std::size_t n = orders.size();
  std::vector<std::vector<PhaseMod1>> b(n, std::vector<PhaseMod1>(n));
  if (j.contains("b")) {
    const json& jb = io::require_array(j["b"], path + "/b");
    if (jb.size() != n) throw ValidationError("at " + path + "/b: expected " + std::to_string(n) + " rows");
    for (std::size_t r = 0; r < n; ++r) {
      const std::string rp = io::index_path(path + "/b", r);
      const json& row = io::require_array(jb[r], rp);
      if (row.size() != n) throw ValidationError("at " + rp + ": expected " + std::to_string(n) + " entries");
      for (std::size_t c = 0; c < n; ++c) b[r][c] = PhaseMod1(io::to_rational(row[c], io::index_path(rp, c)));
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) b[i][i] = PhaseMod1(q[i].value());
  }
  return build_space_raw(orders, q, b);
}

inline json space_to_json(const FiniteQuadraticSpace& s) {
  json j;
  j["orders"] = s.group().invariant_factors();
  json q = json::array(), b = json::array();
  for (const auto& v : s.q_gen()) q.push_back(v.to_string());
  for (const auto& row : s.b_matrix()) {
    json r = json::array();
    for (const auto& v : row) r.push_back(v.to_string());
    b.push_back(r);
  }
  j["q"] = q;
  j["b"] = b;
  return j;
}

inline json subgroup_to_json(const FiniteAbelianGroup& g, const Subgroup& c) {
  json j;
  j["order"] = c.order();
  j["generators"] = c.generators;
  json e = json::array();
  for (auto idx : c.elements) e.push_back(g.element(idx));
  j["elements"] = e;
  return j;
}

/// Subgroup given as a JSON array of generator coordinate tuples.
inline Subgroup subgroup_from_json(const FiniteAbelianGroup& g, const json& j, const std::string& path = "") {
  io::require_array(j, path);
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = io::index_path(path, i);
    io::require_array(j[i], p);
    if (j[i].size() != g.rank()) throw ValidationError("at " + p + ": expected " + std::to_string(g.rank()) + " coordinates");
    GroupElement x;
    for (std::size_t c = 0; c < j[i].size(); ++c) x.push_back(io::to_int(j[i][c], io::index_path(p, c)));
    gens.push_back(x);
  }
  return generate_subgroup(g, gens);
}

}  // namespace genusforge::quadspace
