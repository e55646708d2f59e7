#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "genusforge/errors.hpp"
#include "genusforge/exact/cyclotomic.hpp"

// Arithmetic in the group ring Q[x]/(x^N - 1), which surjects onto
// Q(zeta_N). Roots of unity are single monomials here, so products of
// root-of-unity matrices stay sparse; reduction mod Phi_N happens only when
// a value is compared.
namespace genusforge::modcat::ring {

using exact::CyclotomicNumber;
using exact::Rational;

/// Sparse element: (exponent in [0, N), coefficient) pairs.
using Terms = std::vector<std::pair<std::int64_t, Rational>>;
using Matrix = std::vector<std::vector<Terms>>;

inline Terms lift(const CyclotomicNumber& z, std::int64_t n) {
  if (n % z.order() != 0) throw InternalInconsistency("group ring order is not a multiple of the entry order");
  const std::int64_t step = n / z.order();
  Terms out;
  for (int i = 0; i < z.degree(); ++i) {
    const Rational& c = z.coeffs()[static_cast<std::size_t>(i)];
    if (!c.is_zero()) out.emplace_back(i * step, c);
  }
  return out;
}

/// x^(phase * N); the phase is read mod 1 and N * phase must be integral.
inline Terms monomial(const Rational& phase, std::int64_t n, const Rational& coeff = Rational(1)) {
  const Rational e = phase.mod(Rational(1)) * Rational(n);
  if (!e.is_integer()) throw InternalInconsistency("phase does not lie in the group ring of order " + std::to_string(n));
  return {{e.numerator().get_si(), coeff}};
}

inline Terms conj(const Terms& a, std::int64_t n) {
  Terms out;
  out.reserve(a.size());
  for (const auto& [e, c] : a) out.emplace_back((n - e) % n, c);
  return out;
}

/// Dense accumulator for sums of products.
class Accumulator {
 public:
  explicit Accumulator(std::int64_t n) : n_(n), c_(static_cast<std::size_t>(n)) {}

  void clear() {
    for (auto& v : c_)
      if (!v.is_zero()) v = Rational();
  }
  void add(const Terms& a) {
    for (const auto& [e, c] : a) c_[static_cast<std::size_t>(e)] += c;
  }
  void add_product(const Terms& a, const Terms& b) {
    for (const auto& [ea, ca] : a)
      for (const auto& [eb, cb] : b) c_[static_cast<std::size_t>((ea + eb) % n_)].add_product(ca, cb);
  }
  Terms terms() const {
    Terms out;
    for (std::int64_t e = 0; e < n_; ++e)
      if (!c_[static_cast<std::size_t>(e)].is_zero()) out.emplace_back(e, c_[static_cast<std::size_t>(e)]);
    return out;
  }
  CyclotomicNumber value() const { return CyclotomicNumber(n_, c_); }

 private:
  std::int64_t n_;
  std::vector<Rational> c_;
};

inline Terms multiply(const Terms& a, const Terms& b, std::int64_t n) {
  if (a.size() == 1 && b.size() == 1) {
    Rational c = a[0].second * b[0].second;
    if (c.is_zero()) return {};
    return {{(a[0].first + b[0].first) % n, c}};
  }
  Accumulator acc(n);
  acc.add_product(a, b);
  return acc.terms();
}

inline Terms subtract(const Terms& a, const Terms& b, std::int64_t n) {
  Accumulator acc(n);
  acc.add(a);
  Terms neg = b;
  for (auto& t : neg) t.second = -t.second;
  acc.add(neg);
  return acc.terms();
}

inline CyclotomicNumber value(const Terms& a, std::int64_t n) {
  Accumulator acc(n);
  acc.add(a);
  return acc.value();
}

inline bool is_zero(const Terms& a, std::int64_t n) { return a.empty() || value(a, n).is_zero(); }

inline Matrix multiply(const Matrix& a, const Matrix& b, std::int64_t n) {
  const std::size_t m = a.size();
  Matrix out(m, std::vector<Terms>(m));
  Accumulator acc(n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      acc.clear();
      for (std::size_t k = 0; k < m; ++k) acc.add_product(a[i][k], b[k][j]);
      out[i][j] = acc.terms();
    }
  return out;
}

}  // namespace genusforge::modcat::ring
