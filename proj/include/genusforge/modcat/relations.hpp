#pragma once

#include <string>
#include <vector>

#include "genusforge/exact/interval.hpp"
#include "genusforge/modcat/data.hpp"

namespace genusforge::modcat {

struct RelationCheck {
  std::string name;
  bool passed = true;
  std::string detail;  // first failing entry, empty on success
};

struct RelationReport {
  std::vector<RelationCheck> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return c.name + ": " + c.detail;
    return "";
  }
};

namespace detail {

inline std::string at(std::size_t i, std::size_t j) { return "entry (" + std::to_string(i) + "," + std::to_string(j) + ")"; }

}  // namespace detail

/// Exact checks, all in Q(zeta_N):
///   (i)   s~^2 = D P with P the permutation matrix of i -> i*
///   (ii)  P^2 = 1
///   (iii) s~^2 T0 = T0 s~^2 with T0 = diag(theta_i)
///   (iv)  (s~ T0)^3 = (sum_i theta_i dims_i^2) s~^2
inline RelationReport verify_relations(const ModularData& m) {
  const std::size_t k = m.size();
  const std::int64_t n = common_order(m);
  const ring::Matrix s = lift_s(m, n);
  const ring::Matrix s2 = ring::multiply(s, s, n);
  const Rational d(m.discriminant);
  RelationReport rep;

  RelationCheck r1{"s_tilde^2 = D*P", true, ""};
  for (std::size_t i = 0; i < k && r1.passed; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const CyclotomicNumber v = ring::value(s2[i][j], n);
      const Rational want = j == m.dual[i] ? d : Rational();
      if (!(v == CyclotomicNumber(want))) {
        r1 = {r1.name, false, detail::at(i, j)};
        break;
      }
    }
  rep.checks.push_back(r1);

  RelationCheck r2{"P^2 = 1", true, ""};
  for (std::size_t i = 0; i < k; ++i)
    if (m.dual[i] >= k || m.dual[m.dual[i]] != i) {
      r2 = {r2.name, false, "label " + std::to_string(i)};
      break;
    }
  rep.checks.push_back(r2);

  std::vector<ring::Terms> theta(k);
  for (std::size_t i = 0; i < k; ++i) theta[i] = ring::monomial(m.twists[i].value(), n);

  RelationCheck r3{"s_tilde^2 T = T s_tilde^2", true, ""};
  for (std::size_t i = 0; i < k && r3.passed; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (m.twists[i] == m.twists[j] || s2[i][j].empty()) continue;
      const auto diff = ring::subtract(ring::multiply(s2[i][j], theta[j], n), ring::multiply(theta[i], s2[i][j], n), n);
      if (!ring::is_zero(diff, n)) {
        r3 = {r3.name, false, detail::at(i, j)};
        break;
      }
    }
  rep.checks.push_back(r3);

  ring::Matrix x = s;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) x[i][j] = ring::multiply(s[i][j], theta[j], n);
  const ring::Matrix x3 = ring::multiply(ring::multiply(x, x, n), x, n);
  ring::Accumulator g(n);
  for (std::size_t i = 0; i < k; ++i) {
    const ring::Terms dim = ring::lift(m.dims[i], n);
    g.add(ring::multiply(theta[i], ring::multiply(dim, dim, n), n));
  }
  const ring::Terms gamma = g.terms();
  RelationCheck r4{"(s_tilde T)^3 = (sum theta dims^2) s_tilde^2", true, ""};
  for (std::size_t i = 0; i < k && r4.passed; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const auto diff = ring::subtract(x3[i][j], ring::multiply(gamma, s2[i][j], n), n);
      if (!ring::is_zero(diff, n)) {
        r4 = {r4.name, false, detail::at(i, j)};
        break;
      }
    }
  rep.checks.push_back(r4);
  return rep;
}

/// N[i][j][k], stored flat.
struct FusionTable {
  std::size_t n = 0;
  std::vector<std::int64_t> data;

  std::int64_t at(std::size_t i, std::size_t j, std::size_t k) const { return data[(i * n + j) * n + k]; }
  std::int64_t& at(std::size_t i, std::size_t j, std::size_t k) { return data[(i * n + j) * n + k]; }
};

/// N[i][j][k] = (1/D) sum_l s~[i][l] s~[j][l] conj(s~[k][l]) / s~[0][l].
/// Throws ValidationError unless every value is a nonnegative integer.
inline FusionTable verlinde_fusion(const ModularData& m) {
  const std::size_t k = m.size();
  const std::int64_t n = common_order(m);
  const ring::Matrix s = lift_s(m, n);
  ring::Matrix sc(k, std::vector<ring::Terms>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) sc[i][j] = ring::conj(s[i][j], n);
  std::vector<ring::Terms> inv_dim(k);
  for (std::size_t l = 0; l < k; ++l) {
    const CyclotomicNumber inv = m.dims[l].inverse();
    inv_dim[l] = ring::lift(inv, n);
  }
  const Rational d_inv = Rational(1) / Rational(m.discriminant);

  FusionTable t{k, std::vector<std::int64_t>(k * k * k, 0)};
  ring::Accumulator acc(n);
  std::vector<ring::Terms> p(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) p[l] = ring::multiply(ring::multiply(s[i][l], s[j][l], n), inv_dim[l], n);
      for (std::size_t c = 0; c < k; ++c) {
        acc.clear();
        for (std::size_t l = 0; l < k; ++l) acc.add_product(p[l], sc[c][l]);
        const CyclotomicNumber v = acc.value();
        const std::string where = "N[" + std::to_string(i) + "][" + std::to_string(j) + "][" + std::to_string(c) + "]";
        if (!v.is_rational()) throw ValidationError("non-integral fusion: " + where + " is irrational");
        const Rational r = v.rational_value() * d_inv;
        if (!r.is_integer() || r < Rational(0))
          throw ValidationError("non-integral fusion: " + where + " = " + r.to_string());
        if (!r.numerator().fits_slong_p()) throw LimitExceeded("fusion coefficient too large");
        t.at(i, j, c) = r.numerator().get_si();
      }
    }
  return t;
}

/// sum_m N[i][j][m] N[m][c][l] = sum_m N[j][c][m] N[i][m][l] for all i, j, c, l.
inline bool fusion_associative(const FusionTable& t) {
  const std::size_t n = t.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t l = 0; l < n; ++l) {
          std::int64_t a = 0, b = 0;
          for (std::size_t x = 0; x < n; ++x) {
            a += t.at(i, j, x) * t.at(x, c, l);
            b += t.at(j, c, x) * t.at(i, x, l);
          }
          if (a != b) return false;
        }
  return true;
}

/// D^(g-1) sum_j dims_j^(2-2g-n) prod_s s~[i_s][j]; must be a nonnegative
/// integer.
inline Integer genus_dimension(const ModularData& m, int g, const std::vector<std::size_t>& punctures) {
  if (g < 0) throw ValidationError("genus must be nonnegative");
  const std::size_t k = m.size();
  for (auto p : punctures)
    if (p >= k) throw ValidationError("puncture label " + std::to_string(p) + " out of range");
  const std::int64_t e = 2 - 2 * static_cast<std::int64_t>(g) - static_cast<std::int64_t>(punctures.size());
  CyclotomicNumber sum;
  for (std::size_t j = 0; j < k; ++j) {
    CyclotomicNumber term = m.dims[j].pow(e);
    for (auto p : punctures) term *= m.s_tilde[p][j];
    sum += term;
  }
  if (!sum.is_rational()) throw ValidationError("non-integral dimension: value is irrational");
  Rational v = sum.rational_value();
  const Rational d(m.discriminant);
  for (int i = 0; i < g - 1; ++i) v *= d;
  if (g == 0) v = v / d;
  if (!v.is_integer() || v < Rational(0)) throw ValidationError("non-integral dimension: " + v.to_string());
  return v.numerator();
}

/// sum_j exp(2 pi i h_j) dims_j^2 = exp(2 pi i c/8) sqrt(D), decided by the
/// exact squared identity plus a certified sign of Z exp(-2 pi i c/8).
inline bool voa_milgram_check(const ModularData& m, const Rational& c, int bits = 128) {
  CyclotomicNumber z;
  for (std::size_t j = 0; j < m.size(); ++j) z += CyclotomicNumber::root_of_unity(m.weights[j].value()) * m.dims[j] * m.dims[j];
  const CyclotomicNumber want_sq = Rational(m.discriminant) * CyclotomicNumber::root_of_unity(c / Rational(4));
  if (!(z * z == want_sq)) return false;
  auto y = exact::cyclo_approx(z * CyclotomicNumber::root_of_unity(-c / Rational(8)), bits);
  if (y.real_certainly_positive()) return true;
  if (y.real_certainly_negative()) return false;
  throw InternalInconsistency("certified interval does not separate the sign");
}

}  // namespace genusforge::modcat
