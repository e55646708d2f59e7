#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "genusforge/errors.hpp"

namespace genusforge::exact {

using Integer = mpz_class;

namespace detail {

using i128 = __int128;

inline constexpr std::int64_t kSmallMin = std::numeric_limits<std::int64_t>::min();
inline constexpr std::int64_t kSmallMax = std::numeric_limits<std::int64_t>::max();

// INT64_MIN is excluded so that negation never overflows.
inline bool fits_small(i128 v) { return v > kSmallMin && v <= kSmallMax; }

inline i128 abs128(i128 v) { return v < 0 ? -v : v; }

inline i128 gcd128(i128 a, i128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Integer to_integer(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

inline bool integer_fits_small(const Integer& z) {
  return z.fits_slong_p() && z != Integer(kSmallMin);
}

}  // namespace detail

/// Exact rational number.
///
/// Values whose reduced numerator and denominator fit in a signed 64-bit word
/// are stored inline; anything larger is promoted to a shared immutable GMP
/// rational. The representation is canonical, so equality of the small parts
/// is equality of values.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}                // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) { fix_min(); }   // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v) { fix_min(); }  // NOLINT(google-explicit-constructor)
  Rational(const Integer& v) { assign(mpq_class(v)); }  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpq_class& v) { assign(v); }

  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DivisionByZero();
    set_small(n, d);
  }

  Rational(const Integer& n, const Integer& d) {
    if (d == 0) throw DivisionByZero();
    mpq_class q(n, d);
    q.canonicalize();
    assign(q);
  }

  /// Parses "a", "-a", or "a/b".
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(Integer(trim(s)));
      Integer n(trim(s.substr(0, slash)));
      Integer d(trim(s.substr(slash + 1)));
      if (d == 0) throw DivisionByZero();
      return Rational(n, d);
    } catch (const std::invalid_argument&) {
      throw ValidationError("malformed rational '" + s + "'");
    }
  }

  bool is_small() const { return !big_; }
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const { return big_ ? big_->get_den() == 1 : den_ == 1; }
  int sign() const {
    if (big_) return sgn(*big_);
    return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
  }

  Integer numerator() const { return big_ ? Integer(big_->get_num()) : Integer(static_cast<long>(num_)); }
  Integer denominator() const { return big_ ? Integer(big_->get_den()) : Integer(static_cast<long>(den_)); }

  /// Inline numerator/denominator; only meaningful when is_small().
  std::int64_t small_num() const { return num_; }
  std::int64_t small_den() const { return den_; }

  mpq_class to_mpq() const {
    if (big_) return *big_;
    return mpq_class(Integer(static_cast<long>(num_)), Integer(static_cast<long>(den_)));
  }

  double to_double() const { return big_ ? big_->get_d() : static_cast<double>(num_) / static_cast<double>(den_); }

  std::string to_string() const {
    if (big_) return big_->get_str();
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

  Integer floor() const {
    if (!big_) {
      std::int64_t q = num_ / den_;
      if (num_ % den_ != 0 && num_ < 0) --q;
      return Integer(static_cast<long>(q));
    }
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
    return r;
  }

  /// Representative of this value modulo m in [0, m).
  Rational mod(const Rational& m) const {
    if (!big_ && !m.big_ && den_ == 1 && m.den_ == 1) {
      std::int64_t r = num_ % m.num_;
      if (r < 0) r += m.num_;
      return Rational(r);
    }
    Rational q = *this / m;
    return *this - m * Rational(q.floor());
  }

  Rational operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == b.den_) {
        detail::i128 n = static_cast<detail::i128>(a.num_) + b.num_;
        if (a.den_ == 1) {
          if (detail::fits_small(n)) return from_raw(static_cast<std::int64_t>(n), 1);
          return from_i128(n, 1);
        }
        return from_i128(n, a.den_);
      }
      detail::i128 n = static_cast<detail::i128>(a.num_) * b.den_ + static_cast<detail::i128>(b.num_) * a.den_;
      detail::i128 d = static_cast<detail::i128>(a.den_) * b.den_;
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
  }

  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

  friend Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.den_ == 1 && b.den_ == 1) {
        detail::i128 n = static_cast<detail::i128>(a.num_) * b.num_;
        if (detail::fits_small(n)) return from_raw(static_cast<std::int64_t>(n), 1);
        return from_i128(n, 1);
      }
      if (a.num_ == 0 || b.num_ == 0) return Rational();
      std::int64_t g1 = std::gcd(a.num_, b.den_);
      std::int64_t g2 = std::gcd(b.num_, a.den_);
      if (g1 == 0) g1 = 1;
      if (g2 == 0) g2 = 1;
      detail::i128 n = static_cast<detail::i128>(a.num_ / g1) * (b.num_ / g2);
      detail::i128 d = static_cast<detail::i128>(a.den_ / g2) * (b.den_ / g1);
      if (detail::fits_small(n) && detail::fits_small(d)) return from_raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
      return from_i128(n, d);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
  }

  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

  Rational inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (big_) return Rational(mpq_class(1 / *big_));
    Rational r;
    if (num_ < 0) {
      r.num_ = -den_;
      r.den_ = -num_;
    } else {
      r.num_ = den_;
      r.den_ = num_;
    }
    return r;
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  /// this += a * b, with an allocation-free path for small integers.
  void add_product(const Rational& a, const Rational& b) {
    if (!big_ && !a.big_ && !b.big_ && den_ == 1 && a.den_ == 1 && b.den_ == 1) {
      detail::i128 n = static_cast<detail::i128>(a.num_) * b.num_ + num_;
      if (detail::fits_small(n)) {
        num_ = static_cast<std::int64_t>(n);
        return;
      }
    }
    *this = *this + a * b;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
    if (a.big_ && b.big_) return *a.big_ == *b.big_;
    return false;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      detail::i128 l = static_cast<detail::i128>(a.num_) * b.den_;
      detail::i128 r = static_cast<detail::i128>(b.num_) * a.den_;
      return l <=> r;
    }
    int c = cmp(a.to_mpq(), b.to_mpq());
    return c <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

 private:
  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty");
    std::string t = s.substr(b, e - b + 1);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    return t;
  }

  static Rational from_raw(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }

  static Rational from_i128(detail::i128 n, detail::i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (d != 1) {
      detail::i128 g = detail::gcd128(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
    }
    if (n == 0) d = 1;
    if (detail::fits_small(n) && detail::fits_small(d)) return from_raw(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    Rational r;
    r.assign(mpq_class(detail::to_integer(n), detail::to_integer(d)));
    return r;
  }

  void fix_min() {
    if (num_ == detail::kSmallMin) assign(mpq_class(Integer(static_cast<long>(num_))));
  }

  void set_small(std::int64_t n, std::int64_t d) {
    *this = from_i128(n, d);
  }

  void assign(const mpq_class& q) {
    if (detail::integer_fits_small(q.get_num()) && detail::integer_fits_small(q.get_den())) {
      num_ = q.get_num().get_si();
      den_ = q.get_den().get_si();
      big_.reset();
    } else {
      num_ = 0;
      den_ = 1;
      big_ = std::make_shared<const mpq_class>(q);
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Integer pow2(unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

}  // namespace genusforge::exact
