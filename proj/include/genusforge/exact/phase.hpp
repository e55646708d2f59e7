#pragma once

#include <string>

#include "genusforge/exact/rational.hpp"

namespace genusforge::exact {

/// A rational number reduced modulo a fixed integer period into [0, Period).
///
/// PhaseMod2 carries values of quadratic forms (Q/2Z), PhaseMod1 carries
/// bilinear-form values, twists and conformal weights (Q/Z).
template <int Period>
class Phase {
 public:
  Phase() = default;
  Phase(const Rational& v) : value_(v.mod(Rational(Period))) {}  // NOLINT(google-explicit-constructor)
  Phase(std::int64_t n, std::int64_t d) : Phase(Rational(n, d)) {}

  static Phase parse(const std::string& s) { return Phase(Rational::parse(s)); }

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  std::string to_string() const { return value_.to_string(); }

  friend Phase operator+(const Phase& a, const Phase& b) { return Phase(a.value_ + b.value_); }
  friend Phase operator-(const Phase& a, const Phase& b) { return Phase(a.value_ - b.value_); }
  Phase operator-() const { return Phase(-value_); }
  friend Phase operator*(const Integer& k, const Phase& a) { return Phase(Rational(k) * a.value_); }
  friend Phase operator*(std::int64_t k, const Phase& a) { return Phase(Rational(k) * a.value_); }

  friend bool operator==(const Phase&, const Phase&) = default;
  friend auto operator<=>(const Phase& a, const Phase& b) { return a.value_ <=> b.value_; }

 private:
  Rational value_;
};

using PhaseMod1 = Phase<1>;
using PhaseMod2 = Phase<2>;

/// Halving Q/2Z -> Q/Z, e.g. the twist exp(pi i q) = exp(2 pi i q/2).
inline PhaseMod1 half(const PhaseMod2& p) { return PhaseMod1(p.value() / Rational(2)); }

}  // namespace genusforge::exact
