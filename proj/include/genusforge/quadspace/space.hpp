#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "genusforge/errors.hpp"
#include "genusforge/exact/matrix.hpp"
#include "genusforge/exact/phase.hpp"
#include "genusforge/exact/rational.hpp"

namespace genusforge::quadspace {

using exact::Integer;
using exact::PhaseMod1;
using exact::PhaseMod2;
using exact::Rational;

using GroupElement = std::vector<std::int64_t>;

/// Finite abelian group Z/d_1 + ... + Z/d_n with d_1 | d_2 | ... | d_n.
///
/// Elements are also addressed by a mixed-radix index in which coordinate 0
/// is the most significant digit, so index order is lexicographic order.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2) throw ValidationError("invariant factor " + std::to_string(i) + " must be at least 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0)
        throw ValidationError("invariant factors must form a divisibility chain");
    }
    strides_.assign(factors_.size(), 1);
    order_ = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      strides_[i] = order_;
      if (order_ > (std::int64_t{1} << 62) / factors_[i]) throw LimitExceeded("group order too large");
      order_ *= factors_[i];
    }
  }

  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  std::int64_t order() const { return order_; }
  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  GroupElement reduce(GroupElement x) const {
    if (x.size() != rank()) throw ValidationError("element has wrong number of coordinates");
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] %= factors_[i];
      if (x[i] < 0) x[i] += factors_[i];
    }
    return x;
  }

  std::int64_t index(const GroupElement& x) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) idx += x[i] * strides_[i];
    return idx;
  }

  GroupElement element(std::int64_t idx) const {
    GroupElement x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      x[i] = idx / strides_[i];
      idx %= strides_[i];
    }
    return x;
  }

  std::int64_t add(std::int64_t a, std::int64_t b) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::int64_t s = (a / strides_[i]) % factors_[i] + (b / strides_[i]) % factors_[i];
      if (s >= factors_[i]) s -= factors_[i];
      out += s * strides_[i];
    }
    return out;
  }

  std::int64_t neg(std::int64_t a) const {
    std::int64_t out = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::int64_t c = (a / strides_[i]) % factors_[i];
      out += (c == 0 ? 0 : factors_[i] - c) * strides_[i];
    }
    return out;
  }

  /// Order of the element with the given index.
  std::int64_t element_order(std::int64_t idx) const {
    std::int64_t o = 1;
    for (std::size_t i = 0; i < rank(); ++i) {
      std::int64_t c = (idx / strides_[i]) % factors_[i];
      o = std::lcm(o, factors_[i] / std::gcd(c, factors_[i]));
    }
    return o;
  }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) { return a.factors_ == b.factors_; }

 private:
  std::vector<std::int64_t> factors_;
  std::vector<std::int64_t> strides_;
  std::int64_t order_ = 1;
};

namespace detail {

inline std::int64_t to_i64(const Integer& z, const char* what) {
  if (!z.fits_slong_p()) throw LimitExceeded(std::string(what) + " does not fit in 64 bits");
  return z.get_si();
}

inline std::int64_t mod(__int128 v, std::int64_t m) {
  __int128 r = v % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

}  // namespace detail

/// Quadratic form q: A -> Q/2Z and its bilinear form b: A x A -> Q/Z given by
/// values on the generators.
///
/// Internally every value is scaled by a common denominator M, so q is an
/// integer mod 2M and b an integer mod M.
class FiniteQuadraticSpace {
 public:
  FiniteQuadraticSpace() : scale_(1) {}

  const FiniteAbelianGroup& group() const { return group_; }
  const std::vector<PhaseMod2>& q_gen() const { return q_gen_; }
  const std::vector<std::vector<PhaseMod1>>& b_matrix() const { return b_; }
  std::int64_t order() const { return group_.order(); }
  std::size_t rank() const { return group_.rank(); }

  /// Common denominator M of all generator values.
  std::int64_t scale() const { return scale_; }

  /// M * q(x) as an integer in [0, 2M).
  std::int64_t q_scaled(const GroupElement& x) const {
    const std::int64_t m2 = 2 * scale_;
    __int128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      acc = (acc + static_cast<__int128>(detail::mod(static_cast<__int128>(x[i]) * x[i], m2)) * qn_[i]) % m2;
      for (std::size_t j = i + 1; j < x.size(); ++j) {
        if (x[j] == 0) continue;
        acc = (acc + static_cast<__int128>(detail::mod(static_cast<__int128>(x[i]) * x[j], m2)) * 2 * bn_[i][j]) % m2;
      }
    }
    return detail::mod(acc, m2);
  }

  /// M * b(x, y) as an integer in [0, M).
  std::int64_t b_scaled(const GroupElement& x, const GroupElement& y) const {
    __int128 acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] == 0) continue;
        acc = (acc + static_cast<__int128>(detail::mod(static_cast<__int128>(x[i]) * y[j], scale_)) * bn_[i][j]) % scale_;
      }
    }
    return detail::mod(acc, scale_);
  }

  std::int64_t q_scaled(std::int64_t idx) const { return q_scaled(group_.element(idx)); }
  std::int64_t b_scaled(std::int64_t x, std::int64_t y) const { return b_scaled(group_.element(x), group_.element(y)); }

  PhaseMod2 eval_q(const GroupElement& x) const { return PhaseMod2(Rational(q_scaled(group_.reduce(x)), scale_)); }
  PhaseMod1 eval_b(const GroupElement& x, const GroupElement& y) const {
    return PhaseMod1(Rational(b_scaled(group_.reduce(x), group_.reduce(y)), scale_));
  }

  /// M * q on every element, indexed by element index.
  std::vector<std::int64_t> q_table() const {
    std::vector<std::int64_t> t(static_cast<std::size_t>(order()));
    for (std::int64_t i = 0; i < order(); ++i) t[static_cast<std::size_t>(i)] = q_scaled(i);
    return t;
  }

  friend FiniteQuadraticSpace build_space(const FiniteAbelianGroup&, const std::vector<PhaseMod2>&,
                                          const std::vector<std::vector<PhaseMod1>>&);
  friend FiniteQuadraticSpace make_space_unchecked(const FiniteAbelianGroup&, const std::vector<PhaseMod2>&,
                                                   const std::vector<std::vector<PhaseMod1>>&);

  friend bool operator==(const FiniteQuadraticSpace& a, const FiniteQuadraticSpace& b) {
    return a.group_ == b.group_ && a.q_gen_ == b.q_gen_ && a.b_ == b.b_;
  }

 private:
  void index_values() {
    Integer m = 1;
    for (const auto& q : q_gen_) m = exact::lcm(m, q.value().denominator());
    for (const auto& row : b_)
      for (const auto& v : row) m = exact::lcm(m, v.value().denominator());
    scale_ = detail::to_i64(m, "form denominator");
    if (scale_ > (std::int64_t{1} << 40)) throw LimitExceeded("form denominator too large");
    const std::size_t n = q_gen_.size();
    qn_.assign(n, 0);
    bn_.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      qn_[i] = detail::to_i64((q_gen_[i].value() * Rational(scale_)).numerator(), "scaled q");
      for (std::size_t j = 0; j < n; ++j) bn_[i][j] = detail::to_i64((b_[i][j].value() * Rational(scale_)).numerator(), "scaled b");
    }
  }

  FiniteAbelianGroup group_;
  std::vector<PhaseMod2> q_gen_;
  std::vector<std::vector<PhaseMod1>> b_;
  std::int64_t scale_;
  std::vector<std::int64_t> qn_;
  std::vector<std::vector<std::int64_t>> bn_;
};

/// Assembles a space without any validation. Callers guarantee consistency.
inline FiniteQuadraticSpace make_space_unchecked(const FiniteAbelianGroup& g, const std::vector<PhaseMod2>& q,
                                                 const std::vector<std::vector<PhaseMod1>>& b) {
  FiniteQuadraticSpace s;
  s.group_ = g;
  s.q_gen_ = q;
  s.b_ = b;
  s.index_values();
  return s;
}

inline std::string pair_name(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

/// Checks that (q_gen, b_matrix) define a quadratic form on the group:
/// well-defined on each cyclic factor, polarization-consistent, symmetric.
inline void check_consistency(const std::vector<std::int64_t>& orders, const std::vector<PhaseMod2>& q,
                              const std::vector<std::vector<PhaseMod1>>& b) {
  const std::size_t n = orders.size();
  if (q.size() != n) throw ValidationError("q has " + std::to_string(q.size()) + " entries, expected " + std::to_string(n));
  if (b.size() != n) throw ValidationError("b has " + std::to_string(b.size()) + " rows, expected " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (b[i].size() != n) throw ValidationError("b row " + std::to_string(i) + " has wrong length");
    const Rational d(orders[i]);
    if (!(d * d * q[i].value() / Rational(2)).is_integer())
      throw ValidationError("consistency violation at generator pair " + pair_name(i, i) + ": d^2 q(g) is not in 2Z");
    // b(g, g) is the polarization (q(2g) - 2q(g))/2 = q(g) mod 1.
    if (!(b[i][i] == PhaseMod1(q[i].value())))
      throw ValidationError("consistency violation at generator pair " + pair_name(i, i) + ": b(g,g) must equal q(g) mod 1");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(b[i][j] == b[j][i]))
        throw ValidationError("consistency violation at generator pair " + pair_name(i, j) + ": b is not symmetric");
      if (!(d * b[i][j].value()).is_integer())
        throw ValidationError("consistency violation at generator pair " + pair_name(i, j) + ": d_i b(g_i,g_j) is not integral");
    }
  }
}

/// Throws unless x -> b(x, .) is injective. Brute force over the group.
inline void check_nondegenerate(const FiniteQuadraticSpace& s) {
  const auto& g = s.group();
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < s.rank(); ++j) {
    GroupElement e(s.rank(), 0);
    e[j] = 1;
    gens.push_back(e);
  }
  for (std::int64_t idx = 1; idx < g.order(); ++idx) {
    GroupElement x = g.element(idx);
    bool pairs = false;
    for (const auto& e : gens)
      if (s.b_scaled(x, e) != 0) {
        pairs = true;
        break;
      }
    if (!pairs) {
      std::string coords;
      for (auto c : x) coords += (coords.empty() ? "" : ",") + std::to_string(c);
      throw ValidationError("degenerate form: element (" + coords + ") is orthogonal to every generator");
    }
  }
}

inline constexpr std::int64_t kNondegeneracyCheckCap = std::int64_t{1} << 24;

/// Validated constructor.
inline FiniteQuadraticSpace build_space(const FiniteAbelianGroup& g, const std::vector<PhaseMod2>& q,
                                        const std::vector<std::vector<PhaseMod1>>& b) {
  check_consistency(g.invariant_factors(), q, b);
  auto s = make_space_unchecked(g, q, b);
  if (g.order() > kNondegeneracyCheckCap) throw LimitExceeded("group too large for the nondegeneracy check");
  check_nondegenerate(s);
  return s;
}

/// Derives b from q on generators and on pairwise sums by polarization,
/// b(g_i, g_j) = (q(g_i + g_j) - q(g_i) - q(g_j)) / 2, then validates.
inline FiniteQuadraticSpace build_space_from_q(const FiniteAbelianGroup& g, const std::vector<PhaseMod2>& q,
                                               const std::map<std::pair<std::size_t, std::size_t>, PhaseMod2>& q_pairs) {
  const std::size_t n = g.rank();
  if (q.size() != n) throw ValidationError("q has wrong length");
  std::vector<std::vector<PhaseMod1>> b(n, std::vector<PhaseMod1>(n));
  for (std::size_t i = 0; i < n; ++i) {
    b[i][i] = PhaseMod1(q[i].value());
    for (std::size_t j = i + 1; j < n; ++j) {
      auto it = q_pairs.find({i, j});
      if (it == q_pairs.end()) continue;
      b[i][j] = b[j][i] = exact::half(it->second - q[i] - q[j]);
    }
  }
  return build_space(g, q, b);
}

/// Orthogonal form with b(g_i, g_j) = 0 off the diagonal.
inline FiniteQuadraticSpace orthogonal_space(const std::vector<std::int64_t>& orders, const std::vector<PhaseMod2>& q) {
  const std::size_t n = q.size();
  std::vector<std::vector<PhaseMod1>> b(n, std::vector<PhaseMod1>(n));
  for (std::size_t i = 0; i < n; ++i) b[i][i] = PhaseMod1(q[i].value());
  return build_space(FiniteAbelianGroup(orders), q, b);
}

inline FiniteQuadraticSpace cyclic_space(std::int64_t d, const Rational& q) {
  return orthogonal_space({d}, {PhaseMod2(q)});
}

/// A quadratic form presented on Z/o_1 + ... + Z/o_n with arbitrary o_i >= 1
/// (not necessarily a divisibility chain). Values are assumed consistent.
struct RawForm {
  std::vector<std::int64_t> orders;
  std::vector<PhaseMod2> q;
  std::vector<std::vector<PhaseMod1>> b;

  static RawForm of(const FiniteQuadraticSpace& s) {
    return {s.group().invariant_factors(), s.q_gen(), s.b_matrix()};
  }

  std::size_t rank() const { return orders.size(); }

  GroupElement reduce(const std::vector<Integer>& v) const {
    GroupElement x(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), v[i].get_mpz_t(), Integer(static_cast<long>(orders[i])).get_mpz_t());
      x[i] = r.get_si();
    }
    return x;
  }

  Rational q_of(const GroupElement& x) const {
    Rational acc;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      acc += Rational(x[i] * x[i]) * q[i].value();
      for (std::size_t j = i + 1; j < rank(); ++j)
        if (x[j] != 0) acc += Rational(2 * x[i] * x[j]) * b[i][j].value();
    }
    return acc;
  }

  Rational b_of(const GroupElement& x, const GroupElement& y) const {
    Rational acc;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j)
        if (y[j] != 0) acc += Rational(x[i] * y[j]) * b[i][j].value();
    }
    return acc;
  }
};

/// Subquotient H/K of a raw form, where H is generated by `top` and K by
/// `bottom` (both in raw coordinates, K inside H). The result is put into
/// invariant-factor form through the Smith normal form of the relation
/// matrix of K inside H.
///
/// When `images` is non-null it receives, for every output generator, its
/// representative in raw coordinates.
inline FiniteQuadraticSpace subquotient(const RawForm& raw, const std::vector<GroupElement>& top,
                                        const std::vector<GroupElement>& bottom,
                                        std::vector<GroupElement>* images = nullptr) {
  using exact::IntMatrix;
  const std::size_t n = raw.rank();
  auto lattice = [&](const std::vector<GroupElement>& gens) {
    IntMatrix m(gens.size() + n, n);
    for (std::size_t r = 0; r < gens.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<long>(gens[r][c]);
    for (std::size_t c = 0; c < n; ++c) m(gens.size() + c, c) = static_cast<long>(raw.orders[c]);
    return exact::row_lattice_basis(m);
  };
  IntMatrix b_top = lattice(top);
  IntMatrix b_bot = lattice(bottom);
  // R = B_bot * B_top^-1 is integral when K is inside H. B_top is upper
  // triangular (HNF of a full-rank lattice), so solve row by row.
  IntMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer v = b_bot(i, j);
      for (std::size_t k = 0; k < j; ++k)
        if (r(i, k) != 0) v -= r(i, k) * b_top(k, j);
      if (v % b_top(j, j) != 0) throw InternalInconsistency("bottom subgroup is not contained in top subgroup");
      r(i, j) = v / b_top(j, j);
    }
  auto snf = exact::smith_normal_form(r);
  IntMatrix gens = snf.v_inv * b_top;

  std::vector<std::int64_t> factors;
  std::vector<GroupElement> reps;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = snf.d(i, i);
    if (d == 1) continue;
    if (d == 0) throw InternalInconsistency("subquotient is infinite");
    factors.push_back(detail::to_i64(d, "invariant factor"));
    reps.push_back(raw.reduce(gens.row(i)));
  }
  const std::size_t k = reps.size();
  std::vector<PhaseMod2> q(k);
  std::vector<std::vector<PhaseMod1>> b(k, std::vector<PhaseMod1>(k));
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = PhaseMod2(raw.q_of(reps[i]));
    for (std::size_t j = 0; j < k; ++j) b[i][j] = PhaseMod1(raw.b_of(reps[i], reps[j]));
  }
  if (images) *images = reps;
  return make_space_unchecked(FiniteAbelianGroup(factors), q, b);
}

/// Puts a raw form into invariant-factor form. If the cyclic orders already
/// form a divisibility chain after a stable sort, the generators are kept.
inline FiniteQuadraticSpace normalize(const RawForm& raw) {
  const std::size_t n = raw.rank();
  std::vector<std::size_t> perm;
  for (std::size_t i = 0; i < n; ++i)
    if (raw.orders[i] != 1) perm.push_back(i);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return raw.orders[a] < raw.orders[b]; });
  bool chain = true;
  for (std::size_t i = 1; i < perm.size(); ++i)
    if (raw.orders[perm[i]] % raw.orders[perm[i - 1]] != 0) chain = false;
  if (chain) {
    std::vector<std::int64_t> f;
    std::vector<PhaseMod2> q;
    std::vector<std::vector<PhaseMod1>> b;
    for (auto i : perm) {
      f.push_back(raw.orders[i]);
      q.push_back(raw.q[i]);
      std::vector<PhaseMod1> row;
      for (auto j : perm) row.push_back(raw.b[i][j]);
      b.push_back(row);
    }
    return make_space_unchecked(FiniteAbelianGroup(f), q, b);
  }
  std::vector<GroupElement> top;
  for (std::size_t i = 0; i < n; ++i) {
    GroupElement e(n, 0);
    e[i] = 1;
    top.push_back(e);
  }
  return subquotient(raw, top, {});
}

/// Builds a validated space from generators of arbitrary orders.
inline FiniteQuadraticSpace build_space_raw(const std::vector<std::int64_t>& orders, const std::vector<PhaseMod2>& q,
                                            const std::vector<std::vector<PhaseMod1>>& b) {
  for (std::size_t i = 0; i < orders.size(); ++i)
    if (orders[i] < 1) throw ValidationError("generator order " + std::to_string(i) + " must be positive");
  check_consistency(orders, q, b);
  auto s = normalize(RawForm{orders, q, b});
  if (s.order() > kNondegeneracyCheckCap) throw LimitExceeded("group too large for the nondegeneracy check");
  check_nondegenerate(s);
  return s;
}

inline FiniteQuadraticSpace direct_sum(const FiniteQuadraticSpace& s1, const FiniteQuadraticSpace& s2) {
  RawForm raw;
  const std::size_t n1 = s1.rank(), n2 = s2.rank();
  raw.orders = s1.group().invariant_factors();
  for (auto d : s2.group().invariant_factors()) raw.orders.push_back(d);
  raw.q = s1.q_gen();
  for (const auto& v : s2.q_gen()) raw.q.push_back(v);
  raw.b.assign(n1 + n2, std::vector<PhaseMod1>(n1 + n2));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n1; ++j) raw.b[i][j] = s1.b_matrix()[i][j];
  for (std::size_t i = 0; i < n2; ++i)
    for (std::size_t j = 0; j < n2; ++j) raw.b[n1 + i][n1 + j] = s2.b_matrix()[i][j];
  return normalize(raw);
}

inline std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> ps;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  if (n > 1) ps.push_back(n);
  return ps;
}

/// p-part of the space: generated by (d_i / p^v_i) g_i.
inline FiniteQuadraticSpace primary_part(const FiniteQuadraticSpace& s, std::int64_t p) {
  const std::size_t n = s.rank();
  std::vector<GroupElement> top;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t d = s.group().invariant_factors()[i], m = d;
    while (m % p == 0) m /= p;
    GroupElement e(n, 0);
    e[i] = m % d;
    top.push_back(e);
  }
  return subquotient(RawForm::of(s), top, {});
}

inline std::map<std::int64_t, FiniteQuadraticSpace> primary_decomposition(const FiniteQuadraticSpace& s) {
  std::map<std::int64_t, FiniteQuadraticSpace> out;
  for (auto p : prime_factors(s.order())) out.emplace(p, primary_part(s, p));
  return out;
}

inline FiniteQuadraticSpace trivial_space() { return make_space_unchecked(FiniteAbelianGroup(), {}, {}); }

}  // namespace genusforge::quadspace
