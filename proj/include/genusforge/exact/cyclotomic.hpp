#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "genusforge/errors.hpp"
#include "genusforge/exact/rational.hpp"

namespace genusforge::exact {

namespace detail {
inline std::atomic<std::int64_t>& order_limit_ref() {
  static std::atomic<std::int64_t> limit{10080};
  return limit;
}
}  // namespace detail

/// Largest cyclotomic order that mixed-order arithmetic may widen to.
inline std::int64_t cyclotomic_order_limit() { return detail::order_limit_ref().load(); }
inline void set_cyclotomic_order_limit(std::int64_t n) { detail::order_limit_ref().store(n); }

/// Per-order data: the cyclotomic polynomial Phi_N and its degree phi(N).
struct CyclotomicField {
  std::int64_t order = 1;
  int degree = 1;
  std::vector<std::int64_t> phi;                        // monic, size degree + 1
  std::vector<std::pair<int, std::int64_t>> low_terms;  // nonzero phi[j], j < degree
};

namespace detail {

using IntPoly = std::vector<Integer>;

inline void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division by a monic integer polynomial.
inline IntPoly divide_monic(IntPoly num, const IntPoly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() < den.size()) return {};
  IntPoly quot(num.size() - dd, Integer(0));
  for (std::size_t i = num.size(); i-- > dd;) {
    Integer c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
  }
  trim(num);
  if (!num.empty()) throw InternalInconsistency("cyclotomic division left a remainder");
  return quot;
}

inline std::shared_ptr<const CyclotomicField> build_field(std::int64_t n);

inline std::shared_ptr<const CyclotomicField> field_cached(std::int64_t n) {
  static std::mutex mu;
  static std::map<std::int64_t, std::shared_ptr<const CyclotomicField>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto f = build_field(n);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(n, f).first->second;
}

// Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d.
inline std::shared_ptr<const CyclotomicField> build_field(std::int64_t n) {
  IntPoly p(static_cast<std::size_t>(n) + 1, Integer(0));
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    auto sub = field_cached(d);
    IntPoly den(sub->phi.size());
    for (std::size_t i = 0; i < den.size(); ++i) den[i] = Integer(static_cast<long>(sub->phi[i]));
    p = divide_monic(std::move(p), den);
  }
  auto f = std::make_shared<CyclotomicField>();
  f->order = n;
  f->degree = static_cast<int>(p.size()) - 1;
  f->phi.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!p[i].fits_slong_p()) throw LimitExceeded("cyclotomic polynomial coefficient overflow");
    f->phi[i] = p[i].get_si();
  }
  for (int j = 0; j < f->degree; ++j)
    if (f->phi[static_cast<std::size_t>(j)] != 0) f->low_terms.emplace_back(j, f->phi[static_cast<std::size_t>(j)]);
  return f;
}

}  // namespace detail

inline std::shared_ptr<const CyclotomicField> cyclotomic_field(std::int64_t n) {
  if (n < 1) throw ValidationError("cyclotomic order must be positive");
  if (n > cyclotomic_order_limit())
    throw LimitExceeded("cyclotomic order " + std::to_string(n) + " exceeds limit " +
                        std::to_string(cyclotomic_order_limit()));
  return detail::field_cached(n);
}

/// Reduces an arbitrary-length coefficient vector modulo Phi_N in place and
/// truncates it to the field degree.
inline void reduce_mod_phi(std::vector<Rational>& poly, const CyclotomicField& f) {
  const int deg = f.degree;
  for (std::size_t i = poly.size(); i-- > static_cast<std::size_t>(deg);) {
    if (poly[i].is_zero()) continue;
    const Rational c = poly[i];
    const std::size_t base = i - static_cast<std::size_t>(deg);
    for (const auto& [j, pj] : f.low_terms) poly[base + static_cast<std::size_t>(j)].add_product(c, Rational(-pj));
    poly[i] = Rational();
  }
  poly.resize(static_cast<std::size_t>(deg));
}

/// Exact element of the cyclotomic field Q(zeta_N), stored in the power
/// basis 1, zeta, ..., zeta^(phi(N)-1) with zeta = exp(2 pi i / N).
class CyclotomicNumber {
 public:
  CyclotomicNumber() : CyclotomicNumber(Rational()) {}
  CyclotomicNumber(const Rational& r) : field_(cyclotomic_field(1)), coeffs_{r} {}  // NOLINT(google-explicit-constructor)
  CyclotomicNumber(int v) : CyclotomicNumber(Rational(v)) {}                         // NOLINT(google-explicit-constructor)

  CyclotomicNumber(std::int64_t order, std::vector<Rational> coeffs) : field_(cyclotomic_field(order)), coeffs_(std::move(coeffs)) {
    reduce_mod_phi(coeffs_, *field_);
  }

  /// zeta_N^k.
  static CyclotomicNumber zeta(std::int64_t n, std::int64_t k) {
    auto f = cyclotomic_field(n);
    k %= n;
    if (k < 0) k += n;
    std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(k + 1, f->degree)));
    c[static_cast<std::size_t>(k)] = Rational(1);
    CyclotomicNumber z;
    z.field_ = f;
    reduce_mod_phi(c, *f);
    z.coeffs_ = std::move(c);
    return z;
  }

  /// exp(2 pi i * phase), phase read modulo 1; order is the reduced denominator.
  static CyclotomicNumber root_of_unity(const Rational& phase) {
    Rational p = phase.mod(Rational(1));
    Integer den = p.denominator();
    Integer num = p.numerator();
    if (!den.fits_slong_p()) throw LimitExceeded("root of unity order too large");
    return zeta(den.get_si(), num.get_si());
  }

  std::int64_t order() const { return field_->order; }
  int degree() const { return field_->degree; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const CyclotomicField& field() const { return *field_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
  }

  /// True when the value lies in Q. In the power basis this is exactly
  /// "all coefficients beyond the constant term vanish".
  bool is_rational() const {
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
  }

  Rational rational_value() const {
    if (!is_rational()) throw ValidationError("cyclotomic number is not rational");
    return coeffs_[0];
  }

  /// Image in Q(zeta_M) for a multiple M of the current order.
  CyclotomicNumber embed(std::int64_t m) const {
    if (m == order()) return *this;
    if (m % order() != 0) throw ValidationError("embedding order must be a multiple of the current order");
    auto f = cyclotomic_field(m);
    const std::int64_t step = m / order();
    std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>((degree() - 1) * step + 1, f->degree)));
    for (int i = 0; i < degree(); ++i)
      if (!coeffs_[static_cast<std::size_t>(i)].is_zero()) c[static_cast<std::size_t>(i * step)] = coeffs_[static_cast<std::size_t>(i)];
    CyclotomicNumber r;
    r.field_ = f;
    reduce_mod_phi(c, *f);
    r.coeffs_ = std::move(c);
    return r;
  }

  /// Complex conjugation: the Galois automorphism zeta -> zeta^-1.
  CyclotomicNumber conj() const {
    const std::int64_t n = order();
    std::vector<Rational> c(static_cast<std::size_t>(std::max<std::int64_t>(n, degree())));
    for (int i = 0; i < degree(); ++i) {
      if (coeffs_[static_cast<std::size_t>(i)].is_zero()) continue;
      c[static_cast<std::size_t>((n - i) % n)] += coeffs_[static_cast<std::size_t>(i)];
    }
    CyclotomicNumber r;
    r.field_ = field_;
    reduce_mod_phi(c, *field_);
    r.coeffs_ = std::move(c);
    return r;
  }

  CyclotomicNumber operator-() const {
    CyclotomicNumber r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend CyclotomicNumber operator+(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.order() != b.order()) {
      auto [x, y] = common(a, b);
      return x + y;
    }
    CyclotomicNumber r = a;
    for (std::size_t i = 0; i < r.coeffs_.size(); ++i)
      if (!b.coeffs_[i].is_zero()) r.coeffs_[i] += b.coeffs_[i];
    return r;
  }

  friend CyclotomicNumber operator-(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a + (-b); }

  friend CyclotomicNumber operator*(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.order() != b.order()) {
      auto [x, y] = common(a, b);
      return x * y;
    }
    const int d = a.degree();
    std::vector<Rational> c(static_cast<std::size_t>(2 * d - 1));
    for (int i = 0; i < d; ++i) {
      const Rational& ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (ai.is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        const Rational& bj = b.coeffs_[static_cast<std::size_t>(j)];
        if (!bj.is_zero()) c[static_cast<std::size_t>(i + j)].add_product(ai, bj);
      }
    }
    CyclotomicNumber r;
    r.field_ = a.field_;
    reduce_mod_phi(c, *a.field_);
    r.coeffs_ = std::move(c);
    return r;
  }

  friend CyclotomicNumber operator*(const Rational& s, const CyclotomicNumber& a) {
    CyclotomicNumber r = a;
    for (auto& c : r.coeffs_)
      if (!c.is_zero()) c *= s;
    return r;
  }

  CyclotomicNumber& operator+=(const CyclotomicNumber& o) { return *this = *this + o; }
  CyclotomicNumber& operator-=(const CyclotomicNumber& o) { return *this = *this - o; }
  CyclotomicNumber& operator*=(const CyclotomicNumber& o) { return *this = *this * o; }

  /// Multiplicative inverse via the extended Euclidean algorithm in Q[x]
  /// against Phi_N.
  CyclotomicNumber inverse() const {
    if (is_zero()) throw DivisionByZero("inverting zero cyclotomic number");
    using Poly = std::vector<Rational>;
    auto trim = [](Poly& p) {
      while (!p.empty() && p.back().is_zero()) p.pop_back();
    };
    Poly r0(field_->phi.begin(), field_->phi.end());
    Poly r1 = coeffs_;
    trim(r1);
    Poly s0, s1{Rational(1)};
    while (!(r1.size() == 1)) {
      // r0 = q * r1 + rem
      Poly rem = r0;
      Poly q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0);
      const Rational lead_inv = r1.back().inverse();
      for (std::size_t i = rem.size(); i-- >= r1.size();) {
        if (rem[i].is_zero()) continue;
        Rational c = rem[i] * lead_inv;
        q[i - (r1.size() - 1)] = c;
        for (std::size_t j = 0; j < r1.size(); ++j) rem[i - (r1.size() - 1) + j] -= c * r1[j];
        if (i == 0) break;
      }
      trim(rem);
      // s_new = s0 - q * s1
      Poly prod(q.size() + s1.size());
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i].is_zero()) continue;
        for (std::size_t j = 0; j < s1.size(); ++j) prod[i + j].add_product(q[i], s1[j]);
      }
      Poly snew(std::max(s0.size(), prod.size()));
      for (std::size_t i = 0; i < s0.size(); ++i) snew[i] += s0[i];
      for (std::size_t i = 0; i < prod.size(); ++i) snew[i] -= prod[i];
      trim(snew);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(snew);
      if (r1.empty()) throw InternalInconsistency("cyclotomic polynomial is reducible");
    }
    // r1 is a nonzero constant and s1 * a == r1 mod Phi_N.
    const Rational inv = r1[0].inverse();
    for (auto& c : s1) c *= inv;
    return CyclotomicNumber(order(), std::move(s1));
  }

  friend CyclotomicNumber operator/(const CyclotomicNumber& a, const CyclotomicNumber& b) { return a * b.inverse(); }

  CyclotomicNumber pow(std::int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    CyclotomicNumber result = CyclotomicNumber(Rational(1)).embed(order());
    CyclotomicNumber base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.order() == b.order()) return a.coeffs_ == b.coeffs_;
    auto [x, y] = common(a, b);
    return x.coeffs_ == y.coeffs_;
  }

  /// Lifts both operands to Q(zeta_lcm).
  static std::pair<CyclotomicNumber, CyclotomicNumber> common(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    const std::int64_t l = std::lcm(a.order(), b.order());
    return {a.embed(l), b.embed(l)};
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < degree(); ++i) {
      const Rational& c = coeffs_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")";
      if (i > 0) out += "*z" + std::to_string(order()) + "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  friend class CyclotomicAccumulator;
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;
};

/// Sums of products in a fixed field, reduced once at the end. All operands
/// must already share the accumulator's order.
class CyclotomicAccumulator {
 public:
  explicit CyclotomicAccumulator(std::int64_t order)
      : field_(cyclotomic_field(order)), buf_(static_cast<std::size_t>(2 * field_->degree - 1)) {}

  void add_product(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    const int d = field_->degree;
    for (int i = 0; i < d; ++i) {
      const Rational& ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (ai.is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        const Rational& bj = b.coeffs_[static_cast<std::size_t>(j)];
        if (!bj.is_zero()) buf_[static_cast<std::size_t>(i + j)].add_product(ai, bj);
      }
    }
  }

  void add(const CyclotomicNumber& a) {
    for (int i = 0; i < field_->degree; ++i)
      if (!a.coeffs_[static_cast<std::size_t>(i)].is_zero()) buf_[static_cast<std::size_t>(i)] += a.coeffs_[static_cast<std::size_t>(i)];
  }

  CyclotomicNumber result() const {
    std::vector<Rational> c = buf_;
    return CyclotomicNumber(field_->order, std::move(c));
  }

 private:
  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> buf_;
};

/// Square matrix of cyclotomic numbers sharing one order.
using CycloMatrix = std::vector<std::vector<CyclotomicNumber>>;

inline CycloMatrix multiply(const CycloMatrix& a, const CycloMatrix& b, std::int64_t order) {
  const std::size_t n = a.size();
  CycloMatrix out(n, std::vector<CyclotomicNumber>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      CyclotomicAccumulator acc(order);
      for (std::size_t k = 0; k < n; ++k) acc.add_product(a[i][k], b[k][j]);
      out[i][j] = acc.result();
    }
  return out;
}

}  // namespace genusforge::exact
