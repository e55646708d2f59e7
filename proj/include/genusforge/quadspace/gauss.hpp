#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "genusforge/exact/cyclotomic.hpp"
#include "genusforge/exact/interval.hpp"
#include "genusforge/quadspace/space.hpp"

namespace genusforge::quadspace {

using exact::CyclotomicNumber;

/// Sum over x in A of exp(pi i q(x)), as an element of Q(zeta_2M).
inline CyclotomicNumber gauss_sum(const FiniteQuadraticSpace& s) {
  const std::int64_t n = 2 * s.scale();
  std::vector<Rational> counts(static_cast<std::size_t>(n));
  std::vector<std::int64_t> hist(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 0; i < s.order(); ++i) ++hist[static_cast<std::size_t>(s.q_scaled(i))];
  for (std::size_t k = 0; k < hist.size(); ++k) counts[k] = Rational(hist[k]);
  return CyclotomicNumber(n, counts);
}

/// Given z = r * exp(2 pi i s/8) with r > 0 known up to the sign ambiguity
/// s mod 4 -> s mod 8, returns s in 0..7, or -1 if nothing matches.
///
/// `square_target(k)` must hold exactly when z^2 has phase k/4.
template <typename SquareTarget>
int phase_mod8(const CyclotomicNumber& z, SquareTarget&& square_target, int bits) {
  const CyclotomicNumber sq = z * z;
  for (int k = 0; k < 4; ++k) {
    if (!square_target(sq, k)) continue;
    // z * zeta_8^-k is real: +r or -r.
    auto y = exact::cyclo_approx(z * CyclotomicNumber::zeta(8, -k), bits);
    if (y.real_certainly_positive()) return k;
    if (y.real_certainly_negative()) return k + 4;
    throw InternalInconsistency("certified interval does not separate the phase");
  }
  return -1;
}

/// The unique s in 0..7 with gauss_sum = sqrt|A| exp(2 pi i s / 8).
inline int signature_mod8(const FiniteQuadraticSpace& s, int bits = 128) {
  const CyclotomicNumber g = gauss_sum(s);
  const Rational order(s.order());
  int r = phase_mod8(
      g, [&](const CyclotomicNumber& sq, int k) { return sq == order * CyclotomicNumber::zeta(4, k); }, bits);
  if (r < 0) throw InternalInconsistency("Gauss sum matches no Milgram phase; the form is degenerate");
  return r;
}

/// Cyclic block Z/p^k with q(x) = 2c/p^k and theta = (c/p).
struct JordanBlock {
  std::int64_t p = 0;
  int k = 0;
  int theta = 1;
  friend bool operator==(const JordanBlock&, const JordanBlock&) = default;
};

/// Rank and product of theta over the blocks of one scale p^k.
struct JordanScale {
  int rank = 0;
  int theta = 1;
  friend bool operator==(const JordanScale&, const JordanScale&) = default;
};

inline std::int64_t pow_mod(std::int64_t b, std::int64_t e, std::int64_t m) {
  __int128 r = 1, x = detail::mod(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::int64_t>(r);
}

inline int legendre(std::int64_t a, std::int64_t p) {
  a = detail::mod(a, p);
  if (a == 0) return 0;
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r0 = m, r1 = detail::mod(a, m), t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) throw ValidationError("element is not invertible modulo " + std::to_string(m));
  return detail::mod(t0, m);
}

/// Orthogonal splitting of an odd p-primary space into cyclic blocks.
inline std::vector<JordanBlock> jordan_blocks_odd(const FiniteQuadraticSpace& space, std::int64_t p) {
  if (p < 3 || prime_factors(p) != std::vector<std::int64_t>{p}) throw ValidationError("jordan_blocks_odd needs an odd prime");
  for (auto d : space.group().invariant_factors()) {
    std::int64_t m = d;
    while (m % p == 0) m /= p;
    if (m != 1) throw ValidationError("space is not " + std::to_string(p) + "-primary");
  }
  std::vector<JordanBlock> blocks;
  FiniteQuadraticSpace s = space;
  while (s.rank() > 0) {
    const std::size_t n = s.rank();
    const std::int64_t pe = s.group().exponent();
    int e = 0;
    for (std::int64_t t = pe; t > 1; t /= p) ++e;
    const std::int64_t m = s.scale();

    auto unit = [&](const GroupElement& x) {
      // b(x, x) * p^e is a unit mod p exactly when b(x, x) has order p^e.
      const Rational v = Rational(s.b_scaled(x, x), m) * Rational(pe);
      return v.is_integer() && v.numerator() % p != 0;
    };
    std::vector<GroupElement> cands;
    for (std::size_t i = 0; i < n; ++i) {
      GroupElement x(n, 0);
      x[i] = 1;
      cands.push_back(x);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        GroupElement x(n, 0);
        x[i] = 1;
        x[j] = 1;
        cands.push_back(x);
      }
    GroupElement x;
    for (const auto& c : cands)
      if (unit(c)) {
        x = c;
        break;
      }
    if (x.empty()) throw InternalInconsistency("no element of maximal norm order; the form is degenerate");

    // q(x) = 2c/p^e.
    const Rational qx(s.q_scaled(x), m);
    const Rational a = qx * Rational(pe);  // integer mod 2 p^e
    const std::int64_t a_int = detail::mod(static_cast<__int128>(detail::to_i64(a.numerator(), "q")), 2 * pe);
    const std::int64_t c = detail::mod(static_cast<__int128>(a_int) * ((pe + 1) / 2), pe);
    blocks.push_back({p, e, legendre(c, p)});

    // Project generators onto x^perp: g_i - (b(g_i,x)/b(x,x)) x.
    const std::int64_t u = detail::to_i64((Rational(s.b_scaled(x, x), m) * Rational(pe)).numerator(), "b");
    const std::int64_t u_inv = inverse_mod(u, pe);
    std::vector<GroupElement> top;
    for (std::size_t i = 0; i < n; ++i) {
      GroupElement g(n, 0);
      g[i] = 1;
      const std::int64_t v = detail::to_i64((Rational(s.b_scaled(g, x), m) * Rational(pe)).numerator(), "b");
      const std::int64_t ci = detail::mod(static_cast<__int128>(v) * u_inv, pe);
      for (std::size_t j = 0; j < n; ++j) g[j] = detail::mod(g[j] - static_cast<__int128>(ci) * x[j], s.group().invariant_factors()[j]);
      top.push_back(g);
    }
    s = subquotient(RawForm::of(s), top, {});
  }
  std::sort(blocks.begin(), blocks.end(), [](const JordanBlock& l, const JordanBlock& r) { return l.k < r.k; });
  return blocks;
}

/// Per scale k: (rank, product of theta). A complete invariant for odd p.
inline std::map<int, JordanScale> jordan_invariants(const std::vector<JordanBlock>& blocks) {
  std::map<int, JordanScale> out;
  for (const auto& b : blocks) {
    auto& e = out[b.k];
    e.rank += 1;
    e.theta *= b.theta;
  }
  return out;
}

/// Odd primes carry their Jordan blocks; the 2-part is kept as a space.
struct JordanDecomposition {
  std::map<std::int64_t, std::vector<JordanBlock>> odd;
  std::optional<FiniteQuadraticSpace> two;
};

inline JordanDecomposition jordan_decomposition(const FiniteQuadraticSpace& s) {
  JordanDecomposition out;
  for (auto& [p, part] : primary_decomposition(s)) {
    if (p == 2) out.two = part;
    else out.odd[p] = jordan_blocks_odd(part, p);
  }
  return out;
}

}  // namespace genusforge::quadspace
