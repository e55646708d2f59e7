#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "genusforge/quadspace/space.hpp"

namespace genusforge::quadspace {

/// Subgroup of a small finite abelian group, materialized as a sorted list of
/// element indices.
struct Subgroup {
  std::vector<GroupElement> generators;
  std::vector<std::int64_t> elements;  // sorted element indices, includes 0

  std::int64_t order() const { return static_cast<std::int64_t>(elements.size()); }
  bool contains(std::int64_t idx) const { return std::binary_search(elements.begin(), elements.end(), idx); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
};

inline constexpr std::int64_t kDefaultSubgroupCap = 4096;

namespace detail {

// Closure of a subgroup (as a membership mask) under adding multiples of x.
inline void join_cyclic(const FiniteAbelianGroup& g, std::vector<char>& mask, std::vector<std::int64_t>& elems,
                        std::int64_t x) {
  if (mask[static_cast<std::size_t>(x)]) return;
  std::vector<std::int64_t> base = elems;
  std::int64_t shift = x;
  while (!mask[static_cast<std::size_t>(shift)]) {
    for (auto e : base) {
      std::int64_t y = g.add(e, shift);
      mask[static_cast<std::size_t>(y)] = 1;
      elems.push_back(y);
    }
    shift = g.add(shift, x);
  }
}

// Row r with r[i] = M * b(e_i, x) mod M, so that M * b(y, x) = sum_i y_i r[i].
inline std::vector<std::int64_t> pairing_row(const FiniteQuadraticSpace& s, const GroupElement& x) {
  const std::size_t n = s.rank();
  std::vector<std::int64_t> r(n);
  GroupElement e(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = 1;
    r[i] = s.b_scaled(e, x);
    e[i] = 0;
  }
  return r;
}

inline std::int64_t pair_with_row(const GroupElement& y, const std::vector<std::int64_t>& row, std::int64_t m) {
  __int128 acc = 0;
  for (std::size_t i = 0; i < y.size(); ++i) acc += static_cast<__int128>(y[i]) * row[i];
  return detail::mod(acc, m);
}

}  // namespace detail

/// Subgroup generated by the given elements.
inline Subgroup generate_subgroup(const FiniteAbelianGroup& g, const std::vector<GroupElement>& gens) {
  std::vector<char> mask(static_cast<std::size_t>(g.order()), 0);
  std::vector<std::int64_t> elems{0};
  mask[0] = 1;
  Subgroup s;
  for (const auto& x : gens) {
    auto r = g.reduce(x);
    detail::join_cyclic(g, mask, elems, g.index(r));
    s.generators.push_back(r);
  }
  std::sort(elems.begin(), elems.end());
  s.elements = std::move(elems);
  return s;
}

/// A short generating set, chosen greedily in index order.
inline std::vector<GroupElement> minimal_generators(const FiniteAbelianGroup& g, const std::vector<std::int64_t>& elements) {
  std::vector<char> mask(static_cast<std::size_t>(g.order()), 0);
  std::vector<std::int64_t> span{0};
  mask[0] = 1;
  std::vector<GroupElement> gens;
  for (auto e : elements) {
    if (mask[static_cast<std::size_t>(e)]) continue;
    detail::join_cyclic(g, mask, span, e);
    gens.push_back(g.element(e));
  }
  return gens;
}

inline Subgroup subgroup_from_elements(const FiniteAbelianGroup& g, std::vector<std::int64_t> elements) {
  std::sort(elements.begin(), elements.end());
  Subgroup s;
  s.generators = minimal_generators(g, elements);
  s.elements = std::move(elements);
  return s;
}

inline bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
  return a.elements < b.elements;
}

/// All subgroups C with q|C = 0, each exactly once, sorted by size and then
/// by element list.
///
/// Depth-first canonical augmentation: a subgroup is reached only along its
/// canonical generator sequence x_1 < x_2 < ..., where x_i is the smallest
/// element outside the span of x_1..x_{i-1}.
inline std::vector<Subgroup> isotropic_subgroups(const FiniteQuadraticSpace& s, std::int64_t cap = kDefaultSubgroupCap) {
  const auto& g = s.group();
  if (g.order() > cap)
    throw LimitExceeded("group order " + std::to_string(g.order()) + " exceeds subgroup enumeration cap " + std::to_string(cap));
  const auto q = s.q_table();
  const std::size_t n = static_cast<std::size_t>(g.order());
  std::vector<GroupElement> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = g.element(static_cast<std::int64_t>(i));

  std::vector<Subgroup> out;
  out.push_back(Subgroup{{}, {0}});

  std::vector<std::int64_t> roots;
  for (std::size_t i = 1; i < n; ++i)
    if (q[i] == 0) roots.push_back(static_cast<std::int64_t>(i));

  struct Frame {
    std::vector<char> mask;
    std::vector<std::int64_t> elems;
    std::vector<std::int64_t> gens;
  };

  // cands: isotropic elements orthogonal to C, larger than the last generator.
  auto recurse = [&](auto&& self, const Frame& f, const std::vector<std::int64_t>& cands) -> void {
    for (std::size_t ci = 0; ci < cands.size(); ++ci) {
      const std::int64_t x = cands[ci];
      if (f.mask[static_cast<std::size_t>(x)]) continue;
      // Canonical: x is the smallest new element. The new elements are the
      // cosets C + kx up to the first multiple of x inside C.
      bool canonical = true;
      for (std::int64_t shift = x; canonical && !f.mask[static_cast<std::size_t>(shift)]; shift = g.add(shift, x))
        for (auto e : f.elems)
          if (g.add(e, shift) < x) {
            canonical = false;
            break;
          }
      if (!canonical) continue;
      Frame child{f.mask, f.elems, f.gens};
      detail::join_cyclic(g, child.mask, child.elems, x);
      child.gens.push_back(x);
      Subgroup sg;
      for (auto e : child.gens) sg.generators.push_back(coords[static_cast<std::size_t>(e)]);
      sg.elements = child.elems;
      std::sort(sg.elements.begin(), sg.elements.end());
      out.push_back(std::move(sg));

      std::vector<std::int64_t> next;
      const auto row = detail::pairing_row(s, coords[static_cast<std::size_t>(x)]);
      for (std::size_t cj = ci + 1; cj < cands.size(); ++cj) {
        const std::int64_t y = cands[cj];
        if (child.mask[static_cast<std::size_t>(y)]) continue;
        if (detail::pair_with_row(coords[static_cast<std::size_t>(y)], row, s.scale()) != 0) continue;
        next.push_back(y);
      }
      if (!next.empty()) self(self, child, next);
    }
  };

  Frame root{std::vector<char>(n, 0), {0}, {}};
  root.mask[0] = 1;
  recurse(recurse, root, roots);
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

/// C^perp = { x : b(x, c) = 0 for all c in C }.
inline Subgroup orthogonal_complement(const FiniteQuadraticSpace& s, const Subgroup& c) {
  const auto& g = s.group();
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& gen : c.generators) rows.push_back(detail::pairing_row(s, gen));
  std::vector<std::int64_t> elems;
  GroupElement x(g.rank(), 0);
  for (std::int64_t i = 0; i < g.order(); ++i) {
    bool orth = true;
    for (const auto& r : rows)
      if (detail::pair_with_row(x, r, s.scale()) != 0) {
        orth = false;
        break;
      }
    if (orth) elems.push_back(i);
    // Odometer in index order: coordinate 0 is most significant.
    for (std::size_t k = g.rank(); k-- > 0;) {
      if (++x[k] < g.invariant_factors()[k]) break;
      x[k] = 0;
    }
  }
  return subgroup_from_elements(g, std::move(elems));
}

inline bool is_isotropic(const FiniteQuadraticSpace& s, const Subgroup& c) {
  for (auto e : c.elements)
    if (s.q_scaled(e) != 0) return false;
  return true;
}

/// (C^perp / C, q induced) for an isotropic subgroup C.
inline FiniteQuadraticSpace quotient_space(const FiniteQuadraticSpace& s, const Subgroup& c) {
  if (!is_isotropic(s, c)) throw ValidationError("non-isotropic subgroup: q does not vanish on C");
  const Subgroup perp = orthogonal_complement(s, c);
  return subquotient(RawForm::of(s), perp.generators, c.generators);
}

}  // namespace genusforge::quadspace
