#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "genusforge/lattice/enumerate.hpp"

namespace genusforge::lattice {

struct RootComponent {
  char type = 'A';  // 'A', 'D' or 'E'
  int rank = 0;
  friend auto operator<=>(const RootComponent&, const RootComponent&) = default;
  std::string to_string() const { return std::string(1, type) + std::to_string(rank); }
};

struct RootSystemReport {
  std::vector<RootComponent> components;  // sorted
  std::int64_t root_count = 0;

  std::string to_string() const {
    std::string s;
    for (const auto& c : components) s += (s.empty() ? "" : "+") + c.to_string();
    return s.empty() ? "empty" : s;
  }
};

inline std::int64_t root_count(const RootComponent& c) {
  const std::int64_t r = c.rank;
  switch (c.type) {
    case 'A': return r * (r + 1);
    case 'D': return 2 * r * (r - 1);
    default: return r == 6 ? 72 : r == 7 ? 126 : 240;
  }
}

namespace detail {

/// Connected simply-laced Dynkin diagram -> ADE type.
inline RootComponent classify_component(const std::vector<std::vector<int>>& adj) {
  const int r = static_cast<int>(adj.size());
  int edges = 0;
  int branch = -1;
  for (int v = 0; v < r; ++v) {
    edges += static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    const auto deg = adj[static_cast<std::size_t>(v)].size();
    if (deg > 3) throw InternalInconsistency("root system diagram has a vertex of degree > 3");
    if (deg == 3) {
      if (branch >= 0) throw InternalInconsistency("root system diagram has two branch points");
      branch = v;
    }
  }
  if (edges / 2 != r - 1) throw InternalInconsistency("root system diagram is not a tree");
  if (branch < 0) return {'A', r};
  std::vector<int> arms;
  for (int start : adj[static_cast<std::size_t>(branch)]) {
    int prev = branch, cur = start, len = 1;
    while (adj[static_cast<std::size_t>(cur)].size() == 2) {
      int nxt = adj[static_cast<std::size_t>(cur)][0] == prev ? adj[static_cast<std::size_t>(cur)][1] : adj[static_cast<std::size_t>(cur)][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {'D', r};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', r};
  throw InternalInconsistency("root system diagram is not of ADE type");
}

}  // namespace detail

/// Norm-2 vectors split into irreducible ADE components.
///
/// Positivity comes from the integral functional f(v) = sum_i v_i B^(n-1-i)
/// for B = 2, 3, 5, ...; a base is discarded if any root has f = 0. Simple
/// roots are the positive roots that are not a sum of two positive roots.
inline RootSystemReport root_system(const EvenLattice& l) {
  require_positive_definite(l);
  const auto roots = short_vectors(l, 2);
  const std::size_t n = l.rank();
  RootSystemReport rep;
  rep.root_count = static_cast<std::int64_t>(roots.size());
  if (roots.empty()) return rep;

  std::vector<std::vector<std::int64_t>> positive;
  for (std::int64_t base : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    positive.clear();
    bool tie = false;
    for (const auto& v : roots) {
      __int128 f = 0;
      for (std::size_t i = 0; i < n; ++i) f = f * base + v[i];
      if (f == 0) {
        tie = true;
        break;
      }
      if (f > 0) positive.push_back(v);
    }
    if (!tie) break;
    positive.clear();
  }
  if (positive.empty()) throw InternalInconsistency("no generic functional separates the roots");

  const std::set<std::vector<std::int64_t>> pos_set(positive.begin(), positive.end());
  std::vector<std::vector<std::int64_t>> simple;
  for (const auto& v : positive) {
    bool decomposable = false;
    for (const auto& u : positive) {
      if (u == v) continue;
      std::vector<std::int64_t> d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = v[i] - u[i];
      if (pos_set.count(d)) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(v);
  }

  const auto g = detail::small_gram(l);
  auto inner = [&](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s += a[i] * g[i][j] * b[j];
    return s;
  };
  const std::size_t k = simple.size();
  std::vector<std::vector<int>> adj(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const std::int64_t ip = inner(simple[i], simple[j]);
      if (ip == -1) {
        adj[i].push_back(static_cast<int>(j));
        adj[j].push_back(static_cast<int>(i));
      } else if (ip != 0) {
        throw InternalInconsistency("simple roots with inner product " + std::to_string(ip));
      }
    }

  std::vector<int> comp(k, -1);
  std::int64_t counted = 0;
  for (std::size_t s = 0; s < k; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> members{static_cast<int>(s)};
    comp[s] = static_cast<int>(s);
    for (std::size_t h = 0; h < members.size(); ++h)
      for (int nb : adj[static_cast<std::size_t>(members[h])])
        if (comp[static_cast<std::size_t>(nb)] < 0) {
          comp[static_cast<std::size_t>(nb)] = static_cast<int>(s);
          members.push_back(nb);
        }
    std::vector<int> local(k, -1);
    for (std::size_t m = 0; m < members.size(); ++m) local[static_cast<std::size_t>(members[m])] = static_cast<int>(m);
    std::vector<std::vector<int>> sub(members.size());
    for (std::size_t m = 0; m < members.size(); ++m)
      for (int nb : adj[static_cast<std::size_t>(members[m])]) sub[m].push_back(local[static_cast<std::size_t>(nb)]);
    auto c = detail::classify_component(sub);
    counted += root_count(c);
    rep.components.push_back(c);
  }
  std::sort(rep.components.begin(), rep.components.end());
  if (counted != rep.root_count)
    throw InternalInconsistency("root count " + std::to_string(rep.root_count) + " does not match components " + rep.to_string());
  return rep;
}

}  // namespace genusforge::lattice
