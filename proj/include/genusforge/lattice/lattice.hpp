#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genusforge/errors.hpp"
#include "genusforge/exact/matrix.hpp"
#include "genusforge/quadspace.hpp"

namespace genusforge::lattice {

using exact::IntMatrix;
using exact::Integer;
using exact::RatMatrix;
using exact::Rational;
using quadspace::FiniteQuadraticSpace;

/// Even lattice Z^n with the bilinear form given by an integral Gram matrix.
class EvenLattice {
 public:
  EvenLattice() = default;
  explicit EvenLattice(IntMatrix gram, std::string name = "") : gram_(std::move(gram)), name_(std::move(name)) {
    if (gram_.rows() != gram_.cols()) throw ValidationError("Gram matrix must be square");
    if (!gram_.is_symmetric()) throw ValidationError("Gram matrix must be symmetric");
    for (std::size_t i = 0; i < gram_.rows(); ++i)
      if (gram_(i, i) % 2 != 0) throw ValidationError("Gram diagonal entry " + std::to_string(i) + " is odd; lattice is not even");
    det_ = exact::determinant(gram_);
    if (det_ == 0) throw SingularMatrix("Gram matrix is singular");
  }

  const IntMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  std::size_t rank() const { return gram_.rows(); }
  const Integer& determinant() const { return det_; }

 private:
  IntMatrix gram_;
  std::string name_;
  Integer det_ = 1;
};

inline std::pair<int, int> signature(const EvenLattice& l) { return exact::rational_signature(l.gram()); }

/// L^*/L together with lifts: lift[i] is a rational vector (in lattice-basis
/// coordinates) representing the i-th generator of the discriminant group.
struct DiscriminantForm {
  FiniteQuadraticSpace space;
  std::vector<std::vector<Rational>> lifts;
};

/// Via U G V = D: the rows w_i of V^-1 span Z^n / Z^n G with orders d_i, and
/// y_i = w_i G^-1 are the corresponding dual vectors.
inline DiscriminantForm discriminant_form_with_lifts(const EvenLattice& l) {
  const std::size_t n = l.rank();
  auto snf = exact::smith_normal_form(l.gram());
  RatMatrix v_inv = exact::to_rational(snf.v_inv);
  RatMatrix g_inv = exact::inverse(l.gram());
  RatMatrix y = v_inv * g_inv;
  std::vector<std::int64_t> orders;
  std::vector<std::vector<Rational>> lifts;
  for (std::size_t i = 0; i < n; ++i) {
    Integer d = abs(snf.d(i, i));
    if (d == 1) continue;
    orders.push_back(quadspace::detail::to_i64(d, "discriminant group order"));
    lifts.push_back(y.row(i));
  }
  const RatMatrix g = exact::to_rational(l.gram());
  auto pair = [&](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational acc;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!b[j].is_zero()) acc += a[i] * g(i, j) * b[j];
    }
    return acc;
  };
  const std::size_t k = lifts.size();
  std::vector<quadspace::PhaseMod2> q(k);
  std::vector<std::vector<quadspace::PhaseMod1>> b(k, std::vector<quadspace::PhaseMod1>(k));
  for (std::size_t i = 0; i < k; ++i) {
    q[i] = quadspace::PhaseMod2(pair(lifts[i], lifts[i]));
    for (std::size_t j = 0; j < k; ++j) b[i][j] = quadspace::PhaseMod1(pair(lifts[i], lifts[j]));
  }
  return {quadspace::build_space(quadspace::FiniteAbelianGroup(orders), q, b), lifts};
}

inline FiniteQuadraticSpace discriminant_form(const EvenLattice& l) { return discriminant_form_with_lifts(l).space; }

/// The genus as (discriminant form, signature).
struct GenusSymbol {
  FiniteQuadraticSpace disc_form;
  std::pair<int, int> signature;
};

inline GenusSymbol genus_symbol(const EvenLattice& l, int bits = 128) {
  GenusSymbol g{discriminant_form(l), signature(l)};
  const int s = ((g.signature.first - g.signature.second) % 8 + 8) % 8;
  if (quadspace::signature_mod8(g.disc_form, bits) != s)
    throw InternalInconsistency("Milgram relation fails for lattice '" + l.name() + "'");
  return g;
}

inline bool same_genus(const EvenLattice& a, const EvenLattice& b, std::int64_t cap = quadspace::kDefaultIsometryCap) {
  if (signature(a) != signature(b)) return false;
  auto da = discriminant_form(a), db = discriminant_form(b);
  return quadspace::is_isometric(da, db, cap).has_value();
}

enum class Existence { yes, no, unknown };

inline std::string to_string(Existence e) {
  switch (e) {
    case Existence::yes: return "yes";
    case Existence::no: return "no";
    default: return "unknown";
  }
}

/// Existence of an even lattice with the given discriminant form and
/// signature, decided where the criterion applies.
inline Existence exists_lattice(const FiniteQuadraticSpace& s, std::pair<int, int> sig, int bits = 128) {
  const int target = ((sig.first - sig.second) % 8 + 8) % 8;
  if (quadspace::signature_mod8(s, bits) != target) return Existence::no;
  const int dim = sig.first + sig.second;
  const int rank = static_cast<int>(s.rank());
  if (dim < rank) return Existence::no;
  if (dim > rank) return Existence::yes;
  return Existence::unknown;
}

/// Even overlattice K of L attached to an isotropic subgroup C.
struct Overlattice {
  quadspace::Subgroup subgroup;
  EvenLattice lattice;
  IntMatrix basis;      // rows: basis of K in L-coordinates, scaled by denominator
  Integer denominator;  // K basis = basis / denominator
};

inline Overlattice overlattice_for(const EvenLattice& l, const DiscriminantForm& disc, const quadspace::Subgroup& c) {
  const std::size_t n = l.rank();
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n);
    e[i] = Rational(1);
    rows.push_back(e);
  }
  for (const auto& gen : c.generators) {
    std::vector<Rational> v(n);
    for (std::size_t k = 0; k < gen.size(); ++k)
      for (std::size_t j = 0; j < n; ++j) v[j] += Rational(gen[k]) * disc.lifts[k][j];
    rows.push_back(v);
  }
  Integer den = 1;
  for (const auto& r : rows)
    for (const auto& x : r) den = exact::lcm(den, x.denominator());
  IntMatrix m(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = (rows[i][j] * Rational(den)).numerator();
  IntMatrix b = exact::row_lattice_basis(m);
  IntMatrix scaled = b * l.gram() * b.transpose();
  const Integer den2 = den * den;
  IntMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (scaled(i, j) % den2 != 0) throw InternalInconsistency("overlattice Gram matrix is not integral");
      gram(i, j) = scaled(i, j) / den2;
    }
  return {c, EvenLattice(gram, l.name().empty() || c.order() == 1 ? l.name() : l.name() + "+"), b, den};
}

/// One even overlattice per isotropic subgroup of the discriminant form.
inline std::vector<Overlattice> overlattices(const EvenLattice& l, std::int64_t cap = quadspace::kDefaultSubgroupCap) {
  auto disc = discriminant_form_with_lifts(l);
  std::vector<Overlattice> out;
  for (const auto& c : quadspace::isotropic_subgroups(disc.space, cap)) out.push_back(overlattice_for(l, disc, c));
  return out;
}

}  // namespace genusforge::lattice
