#pragma once

#include <string>

#include "genusforge/io/json_util.hpp"
#include "genusforge/modcat/relations.hpp"

namespace genusforge::modcat {

using io::json;

/// {"order": N, "coeffs": [...]} in the power basis of Q(zeta_N), or a
/// plain rational.
inline CyclotomicNumber cyclotomic_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) return CyclotomicNumber(io::to_rational(j, path));
  const std::int64_t order = io::to_int(io::require(j, "order", path), path + "/order");
  if (order < 1) throw ValidationError("at " + path + "/order: must be positive");
  const json& jc = io::require_array(io::require(j, "coeffs", path), path + "/coeffs");
  std::vector<Rational> c(std::max<std::size_t>(jc.size(), static_cast<std::size_t>(exact::cyclotomic_field(order)->degree)));
  for (std::size_t i = 0; i < jc.size(); ++i) c[i] = io::to_rational(jc[i], io::index_path(path + "/coeffs", i));
  return CyclotomicNumber(order, c);
}

inline json cyclotomic_to_json(const CyclotomicNumber& z) {
  if (z.is_rational()) return z.rational_value().to_string();
  json c = json::array();
  for (const auto& x : z.coeffs()) c.push_back(x.to_string());
  return json{{"order", z.order()}, {"coeffs", c}};
}

/// {"labels": n, "dual": [...], "s_tilde": [[...]], "twists": [...],
///  "weights": [...]}; dims are row 0 and D = sum dims^2.
inline ModularData modular_data_from_json(const json& j, const std::string& path = "") {
  const std::int64_t n = io::to_int(io::require(j, "labels", path), path + "/labels");
  if (n < 1) throw ValidationError("at " + path + "/labels: must be positive");
  const auto k = static_cast<std::size_t>(n);
  auto sized = [&](const char* key) -> const json& {
    const json& a = io::require_array(io::require(j, key, path), path + "/" + key);
    if (a.size() != k) throw ValidationError("at " + path + "/" + key + ": expected " + std::to_string(k) + " entries");
    return a;
  };
  ModularData m;
  const json& jd = sized("dual");
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t v = io::to_int(jd[i], io::index_path(path + "/dual", i));
    if (v < 0 || v >= n) throw ValidationError("at " + io::index_path(path + "/dual", i) + ": label out of range");
    m.dual.push_back(static_cast<std::size_t>(v));
  }
  const json& js = sized("s_tilde");
  for (std::size_t i = 0; i < k; ++i) {
    const std::string rp = io::index_path(path + "/s_tilde", i);
    const json& row = io::require_array(js[i], rp);
    if (row.size() != k) throw ValidationError("at " + rp + ": expected " + std::to_string(k) + " entries");
    std::vector<CyclotomicNumber> r;
    for (std::size_t c = 0; c < k; ++c) r.push_back(cyclotomic_from_json(row[c], io::index_path(rp, c)));
    m.s_tilde.push_back(std::move(r));
  }
  const json& jt = sized("twists");
  const json& jw = sized("weights");
  for (std::size_t i = 0; i < k; ++i) {
    m.twists.emplace_back(io::to_rational(jt[i], io::index_path(path + "/twists", i)));
    m.weights.emplace_back(io::to_rational(jw[i], io::index_path(path + "/weights", i)));
  }
  if (j.contains("unitary")) {
    if (!j["unitary"].is_boolean()) throw ValidationError("at " + path + "/unitary: expected a boolean");
    m.unitary = j["unitary"].get<bool>();
  }
  m.dims = m.s_tilde[0];
  CyclotomicNumber d;
  for (const auto& x : m.dims) d += x * x;
  if (!d.is_rational() || !d.rational_value().is_integer())
    throw ValidationError("at " + path + "/s_tilde: sum of squared dimensions is not an integer");
  m.discriminant = d.rational_value().numerator();
  validate(m);
  return m;
}

inline json modular_data_to_json(const ModularData& m) {
  json s = json::array(), t = json::array(), w = json::array();
  for (const auto& row : m.s_tilde) {
    json r = json::array();
    for (const auto& z : row) r.push_back(cyclotomic_to_json(z));
    s.push_back(r);
  }
  for (const auto& x : m.twists) t.push_back(x.to_string());
  for (const auto& x : m.weights) w.push_back(x.to_string());
  return json{{"labels", m.size()}, {"dual", m.dual}, {"s_tilde", s}, {"twists", t}, {"weights", w},
              {"unitary", m.unitary}, {"discriminant", m.discriminant.get_str()}};
}

inline json relation_report_to_json(const RelationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e{{"relation", c.name}, {"passed", c.passed}};
    if (!c.passed) e["failure"] = c.detail;
    checks.push_back(e);
  }
  return json{{"all_passed", r.all_passed()}, {"checks", checks}};
}

inline json fusion_to_json(const FusionTable& t) {
  json out = json::array();
  for (std::size_t i = 0; i < t.n; ++i) {
    json a = json::array();
    for (std::size_t j = 0; j < t.n; ++j) {
      json b = json::array();
      for (std::size_t c = 0; c < t.n; ++c) b.push_back(t.at(i, j, c));
      a.push_back(b);
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace genusforge::modcat
