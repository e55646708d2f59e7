#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "genusforge/quadspace/space.hpp"

namespace genusforge::quadspace {

inline constexpr std::int64_t kDefaultIsometryCap = 3000;

/// Images of the generators of the source space.
using Isometry = std::vector<GroupElement>;

/// Multiset of q-values, as a sorted list of rationals.
inline std::vector<Rational> q_value_multiset(const FiniteQuadraticSpace& s) {
  std::vector<Rational> v;
  v.reserve(static_cast<std::size_t>(s.order()));
  for (std::int64_t i = 0; i < s.order(); ++i) v.push_back(Rational(s.q_scaled(i), s.scale()));
  std::sort(v.begin(), v.end());
  return v;
}

/// Searches for an isometry s1 -> s2 by backtracking over generator images.
/// A map that preserves q and b on generators is an isometry; it is
/// injective because s1 is nondegenerate.
inline std::optional<Isometry> is_isometric(const FiniteQuadraticSpace& s1, const FiniteQuadraticSpace& s2,
                                            std::int64_t cap = kDefaultIsometryCap) {
  if (s1.order() > cap || s2.order() > cap)
    throw LimitExceeded("isometry search is capped at groups of order " + std::to_string(cap));
  if (!(s1.group() == s2.group())) return std::nullopt;
  if (q_value_multiset(s1) != q_value_multiset(s2)) return std::nullopt;

  const auto& g1 = s1.group();
  const auto& g2 = s2.group();
  const std::size_t n = g1.rank();
  std::vector<GroupElement> elems(static_cast<std::size_t>(g2.order()));
  std::vector<Rational> q2(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    elems[i] = g2.element(static_cast<std::int64_t>(i));
    q2[i] = Rational(s2.q_scaled(elems[i]), s2.scale());
  }

  // Candidate images for generator i: order divides d_i and q matches.
  std::vector<std::vector<std::size_t>> cands(n);
  std::vector<GroupElement> gens(n, GroupElement(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    gens[i][i] = 1;
    const std::int64_t d = g1.invariant_factors()[i];
    const Rational qi = s1.q_gen()[i].value();
    for (std::size_t e = 0; e < elems.size(); ++e)
      if (d % g2.element_order(static_cast<std::int64_t>(e)) == 0 && q2[e] == qi) cands[i].push_back(e);
  }

  Isometry images(n);
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (auto e : cands[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = s2.eval_b(elems[e], images[j]) == s1.b_matrix()[i][j];
      if (!ok) continue;
      images[i] = elems[e];
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  if (!search(search, 0)) return std::nullopt;
  return images;
}

}  // namespace genusforge::quadspace
