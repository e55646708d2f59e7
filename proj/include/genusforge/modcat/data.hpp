#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "genusforge/exact/cyclotomic.hpp"
#include "genusforge/exact/phase.hpp"
#include "genusforge/modcat/ring.hpp"
#include "genusforge/quadspace/space.hpp"

namespace genusforge::modcat {

using exact::CycloMatrix;
using exact::CyclotomicNumber;
using exact::Integer;
using exact::Rational;
using quadspace::FiniteQuadraticSpace;
using exact::PhaseMod1;

/// S-, T- and dimension data of a modular category. Label 0 is the unit.
///
/// s_tilde = sqrt(D) * S, so the entries lie in a cyclotomic field. When all
/// entries are roots of unity their phases are kept in s_phases as well.
struct ModularData {
  std::vector<std::size_t> dual;
  CycloMatrix s_tilde;
  std::vector<PhaseMod1> twists;
  std::vector<PhaseMod1> weights;
  std::vector<CyclotomicNumber> dims;
  Integer discriminant = 1;
  bool unitary = true;
  std::optional<std::vector<std::vector<Rational>>> s_phases;

  std::size_t size() const { return dual.size(); }
};

namespace detail {

inline std::int64_t lcm_checked(std::int64_t a, const Integer& b) {
  if (!b.fits_slong_p()) throw LimitExceeded("cyclotomic order too large");
  const std::int64_t l = std::lcm(a, b.get_si());
  if (l > exact::cyclotomic_order_limit())
    throw LimitExceeded("cyclotomic order " + std::to_string(l) + " exceeds limit " + std::to_string(exact::cyclotomic_order_limit()));
  return l;
}

}  // namespace detail

/// Smallest N such that every s_tilde entry and every twist lives in Q(zeta_N).
inline std::int64_t common_order(const ModularData& m) {
  std::int64_t n = 1;
  if (m.s_phases) {
    for (const auto& row : *m.s_phases)
      for (const auto& p : row) n = detail::lcm_checked(n, p.denominator());
  } else {
    for (const auto& row : m.s_tilde)
      for (const auto& z : row) n = detail::lcm_checked(n, Integer(static_cast<long>(z.order())));
  }
  for (const auto& t : m.twists) n = detail::lcm_checked(n, t.value().denominator());
  return n;
}

/// s_tilde lifted to the group ring of order n.
inline ring::Matrix lift_s(const ModularData& m, std::int64_t n) {
  const std::size_t k = m.size();
  ring::Matrix out(k, std::vector<ring::Terms>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      out[i][j] = m.s_phases ? ring::monomial((*m.s_phases)[i][j], n) : ring::lift(m.s_tilde[i][j], n);
  return out;
}

/// Structural invariants: square symmetric s_tilde, row 0 = dims (all
/// nonzero), D = sum dims^2 a positive integer, i -> i* an involution
/// fixing 0, twists equal weights mod 1.
inline void validate(const ModularData& m) {
  const std::size_t n = m.size();
  if (n == 0) throw ValidationError("modular data needs at least one label");
  if (m.s_tilde.size() != n || m.twists.size() != n || m.weights.size() != n || m.dims.size() != n)
    throw ValidationError("modular data fields have inconsistent sizes");
  for (const auto& row : m.s_tilde)
    if (row.size() != n) throw ValidationError("s_tilde must be square");
  if (m.dual[0] != 0) throw ValidationError("the unit label must be self-dual");
  for (std::size_t i = 0; i < n; ++i) {
    if (m.dual[i] >= n) throw ValidationError("dual label " + std::to_string(i) + " out of range");
    if (m.dual[m.dual[i]] != i) throw ValidationError("charge conjugation is not an involution at label " + std::to_string(i));
    if (!(m.twists[i] == m.weights[i])) throw ValidationError("twist and weight disagree mod 1 at label " + std::to_string(i));
    if (m.dims[i].is_zero()) throw ValidationError("dimension of label " + std::to_string(i) + " is zero");
    if (!(m.s_tilde[0][i] == m.dims[i])) throw ValidationError("s_tilde row 0 differs from dims at label " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j)
      if (!(m.s_tilde[i][j] == m.s_tilde[j][i]))
        throw ValidationError("s_tilde is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  CyclotomicNumber d;
  for (const auto& x : m.dims) d += x * x;
  if (!d.is_rational() || !d.rational_value().is_integer() || d.rational_value() <= Rational(0))
    throw ValidationError("sum of squared dimensions is not a positive integer");
  if (d.rational_value().numerator() != m.discriminant)
    throw ValidationError("discriminant does not equal the sum of squared dimensions");
}

inline ModularData trivial_data() {
  ModularData m;
  m.dual = {0};
  m.s_tilde = {{CyclotomicNumber(1)}};
  m.twists = {PhaseMod1()};
  m.weights = {PhaseMod1()};
  m.dims = {CyclotomicNumber(1)};
  m.discriminant = 1;
  m.s_phases = std::vector<std::vector<Rational>>{{Rational()}};
  return m;
}

/// Labels are group elements by index; s_tilde[x][y] = exp(-2 pi i b(x,y)),
/// twist t_x = q(x)/2 mod 1, x* = -x.
inline ModularData from_quadratic_space(const FiniteQuadraticSpace& s) {
  const auto& g = s.group();
  const std::int64_t n = s.order();
  const auto k = static_cast<std::size_t>(n);
  ModularData m;
  m.dual.resize(k);
  m.twists.resize(k);
  m.dims.assign(k, CyclotomicNumber(1));
  m.discriminant = Integer(static_cast<long>(n));
  std::vector<std::vector<Rational>> ph(k, std::vector<Rational>(k));
  for (std::int64_t x = 0; x < n; ++x) {
    const auto ux = static_cast<std::size_t>(x);
    m.dual[ux] = static_cast<std::size_t>(g.neg(x));
    m.twists[ux] = PhaseMod1(Rational(s.q_scaled(x), 2 * s.scale()));
    for (std::int64_t y = 0; y <= x; ++y) {
      const Rational p = Rational(-s.b_scaled(x, y), s.scale()).mod(Rational(1));
      ph[ux][static_cast<std::size_t>(y)] = ph[static_cast<std::size_t>(y)][ux] = p;
    }
  }
  m.weights = m.twists;
  m.s_tilde.assign(k, std::vector<CyclotomicNumber>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m.s_tilde[i][j] = CyclotomicNumber::root_of_unity(ph[i][j]);
  m.s_phases = std::move(ph);
  return m;
}

/// Labels 0, 1, 2 for weights 0, 1/2, 1/16.
inline ModularData ising_data() {
  const CyclotomicNumber r2 = CyclotomicNumber::zeta(8, 1) + CyclotomicNumber::zeta(8, -1);
  const CyclotomicNumber one(1), zero(0);
  ModularData m;
  m.dual = {0, 1, 2};
  m.s_tilde = {{one, one, r2}, {one, one, -r2}, {r2, -r2, zero}};
  m.weights = {PhaseMod1(Rational(0)), PhaseMod1(Rational(1, 2)), PhaseMod1(Rational(1, 16))};
  m.twists = m.weights;
  m.dims = {one, one, r2};
  m.discriminant = 4;
  return m;
}

/// Deligne product: label (i1, i2) has index i1 * |I2| + i2.
inline ModularData product(const ModularData& a, const ModularData& b) {
  const std::size_t na = a.size(), nb = b.size(), n = na * nb;
  ModularData m;
  m.dual.resize(n);
  m.twists.resize(n);
  m.weights.resize(n);
  m.dims.resize(n);
  m.s_tilde.assign(n, std::vector<CyclotomicNumber>(n));
  m.discriminant = a.discriminant * b.discriminant;
  m.unitary = a.unitary && b.unitary;
  for (std::size_t i1 = 0; i1 < na; ++i1)
    for (std::size_t i2 = 0; i2 < nb; ++i2) {
      const std::size_t i = i1 * nb + i2;
      m.dual[i] = a.dual[i1] * nb + b.dual[i2];
      m.twists[i] = a.twists[i1] + b.twists[i2];
      m.weights[i] = a.weights[i1] + b.weights[i2];
      m.dims[i] = a.dims[i1] * b.dims[i2];
      for (std::size_t j1 = 0; j1 < na; ++j1)
        for (std::size_t j2 = 0; j2 < nb; ++j2) m.s_tilde[i][j1 * nb + j2] = a.s_tilde[i1][j1] * b.s_tilde[i2][j2];
    }
  if (a.s_phases && b.s_phases) {
    std::vector<std::vector<Rational>> ph(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        ph[i][j] = ((*a.s_phases)[i / nb][j / nb] + (*b.s_phases)[i % nb][j % nb]).mod(Rational(1));
    m.s_phases = std::move(ph);
  }
  return m;
}

}  // namespace genusforge::modcat
