#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "genusforge/modcat/relations.hpp"
#include "genusforge/quadspace/subgroups.hpp"

namespace genusforge::modcat {

inline constexpr std::size_t kDefaultLabelCap = 256;

/// One simple-current extension per isotropic subgroup C; every M_c, c in C,
/// occurs once and the extension's category is C^perp / C.
struct ExtensionReport {
  quadspace::Subgroup subgroup;
  FiniteQuadraticSpace quotient;
  std::int64_t multiplicity = 1;
  bool exists_unique = true;
};

inline std::vector<ExtensionReport> simple_current_extensions(const FiniteQuadraticSpace& s,
                                                              std::int64_t cap = quadspace::kDefaultSubgroupCap) {
  std::vector<ExtensionReport> out;
  for (auto& c : quadspace::isotropic_subgroups(s, cap)) {
    auto quo = quadspace::quotient_space(s, c);
    out.push_back({std::move(c), std::move(quo), 1, true});
  }
  return out;
}

struct VoaGenusSymbol {
  ModularData data;
  Rational central_charge;
};

/// Throws ValidationError if (data, c) violates the VOA Milgram relation.
inline VoaGenusSymbol make_voa_genus(ModularData data, const Rational& c, int bits = 128) {
  if (!voa_milgram_check(data, c, bits)) throw ValidationError("central charge " + c.to_string() + " fails the Milgram relation");
  return {std::move(data), c};
}

/// Equal central charges and a label bijection fixing 0 that matches
/// s_tilde and the twists. Backtracking over labels, pruned by (twist, dim).
inline bool voa_genus_equal(const VoaGenusSymbol& g1, const VoaGenusSymbol& g2, std::size_t cap = kDefaultLabelCap) {
  if (g1.central_charge != g2.central_charge) return false;
  const ModularData& a = g1.data;
  const ModularData& b = g2.data;
  const std::size_t n = a.size();
  if (n != b.size()) return false;
  if (n > cap) throw LimitExceeded("label count " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (a.discriminant != b.discriminant) return false;

  std::vector<std::vector<bool>> allowed(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      allowed[i][j] = a.twists[i] == b.twists[j] && a.dims[i] == b.dims[j] && a.s_tilde[i][i] == b.s_tilde[j][j];
  if (!allowed[0][0]) return false;

  std::vector<std::size_t> perm(n, n);
  std::vector<bool> used(n, false);
  perm[0] = 0;
  used[0] = true;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 1; j < n; ++j) {
      if (used[j] || !allowed[i][j]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p) ok = a.s_tilde[i][p] == b.s_tilde[j][perm[p]];
      if (!ok) continue;
      perm[i] = j;
      used[j] = true;
      if (self(self, i + 1)) return true;
      used[j] = false;
    }
    perm[i] = n;
    return false;
  };
  return rec(rec, 1);
}

}  // namespace genusforge::modcat
