#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "genusforge/exact/cyclotomic.hpp"

namespace genusforge::exact {

/// RAII handle over an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }

  std::string to_string(int digits = 20) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_t v_;
};

/// Closed rectangle [re_lo, re_hi] x [im_lo, im_hi] in the complex plane.
struct ComplexInterval {
  BigFloat re_lo, re_hi, im_lo, im_hi;

  explicit ComplexInterval(mpfr_prec_t p) : re_lo(p), re_hi(p), im_lo(p), im_hi(p) {}

  bool contains(const ComplexInterval& inner) const {
    return mpfr_lessequal_p(re_lo.get(), inner.re_lo.get()) && mpfr_greaterequal_p(re_hi.get(), inner.re_hi.get()) &&
           mpfr_lessequal_p(im_lo.get(), inner.im_lo.get()) && mpfr_greaterequal_p(im_hi.get(), inner.im_hi.get());
  }

  bool contains_point(double re, double im) const {
    return mpfr_cmp_d(re_lo.get(), re) <= 0 && mpfr_cmp_d(re_hi.get(), re) >= 0 && mpfr_cmp_d(im_lo.get(), im) <= 0 &&
           mpfr_cmp_d(im_hi.get(), im) >= 0;
  }

  /// Upper bound on max(real width, imaginary width).
  double width() const {
    BigFloat w(64), v(64);
    mpfr_sub(w.get(), re_hi.get(), re_lo.get(), MPFR_RNDU);
    mpfr_sub(v.get(), im_hi.get(), im_lo.get(), MPFR_RNDU);
    return std::max(w.to_double(), v.to_double());
  }

  bool real_certainly_positive() const { return mpfr_sgn(re_lo.get()) > 0; }
  bool real_certainly_negative() const { return mpfr_sgn(re_hi.get()) < 0; }
};

/// Certified enclosure of a cyclotomic number.
///
/// Each term c_k * exp(2 pi i k / N) is evaluated at a working precision
/// chosen so that the accumulated error bound, S * (phi + 32) * 2^-p with
/// S = sum |c_k|, is at most 2^-bits. The returned rectangle is the midpoint
/// widened by that bound, so its width is at most 2^(1 - bits).
inline ComplexInterval cyclo_approx(const CyclotomicNumber& z, int bits = 128) {
  if (bits < 32) throw ValidationError("approximation precision must be at least 32 bits");
  const int deg = z.degree();

  // S rounded up, as a double; exponent only matters for choosing p.
  double s_bound = 0;
  for (const auto& c : z.coeffs()) s_bound += std::fabs(c.to_double());
  s_bound = s_bound * (1 + 1e-9) + 1e-300;
  const double err_scale = s_bound * (deg + 32);
  const int extra = static_cast<int>(std::ceil(std::log2(std::max(err_scale, 1.0)))) + 8;
  const mpfr_prec_t p = bits + extra;

  BigFloat pi(p), angle(p), cs(p), sn(p), coef(p), term(p);
  BigFloat re(p), im(p);
  mpfr_const_pi(pi.get(), MPFR_RNDN);
  mpq_t q;
  mpq_init(q);
  for (int k = 0; k < deg; ++k) {
    const Rational& c = z.coeffs()[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    mpq_class cq = c.to_mpq();
    mpfr_set_q(coef.get(), cq.get_mpq_t(), MPFR_RNDN);
    // angle = 2 pi k / N
    mpq_set_si(q, 2 * k, static_cast<unsigned long>(z.order()));
    mpq_canonicalize(q);
    mpfr_mul_q(angle.get(), pi.get(), q, MPFR_RNDN);
    mpfr_sin_cos(sn.get(), cs.get(), angle.get(), MPFR_RNDN);
    mpfr_mul(term.get(), coef.get(), cs.get(), MPFR_RNDN);
    mpfr_add(re.get(), re.get(), term.get(), MPFR_RNDN);
    mpfr_mul(term.get(), coef.get(), sn.get(), MPFR_RNDN);
    mpfr_add(im.get(), im.get(), term.get(), MPFR_RNDN);
  }
  mpq_clear(q);

  // Error radius err_scale * 2^-p, rounded up.
  BigFloat rad(p);
  mpfr_set_d(rad.get(), err_scale, MPFR_RNDU);
  mpfr_mul_2si(rad.get(), rad.get(), -static_cast<long>(p), MPFR_RNDU);

  ComplexInterval out(p);
  mpfr_sub(out.re_lo.get(), re.get(), rad.get(), MPFR_RNDD);
  mpfr_add(out.re_hi.get(), re.get(), rad.get(), MPFR_RNDU);
  mpfr_sub(out.im_lo.get(), im.get(), rad.get(), MPFR_RNDD);
  mpfr_add(out.im_hi.get(), im.get(), rad.get(), MPFR_RNDU);
  return out;
}

}  // namespace genusforge::exact
