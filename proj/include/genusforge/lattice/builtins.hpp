#pragma once

#include <string>
#include <vector>

#include "genusforge/lattice/lattice.hpp"

namespace genusforge::lattice {

inline EvenLattice a_n(int n) {
  if (n < 1) throw ValidationError("A_n needs n >= 1");
  const auto k = static_cast<std::size_t>(n);
  IntMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    g(i, i) = 2;
    if (i + 1 < k) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return EvenLattice(g, "A" + std::to_string(n));
}

/// Cartan matrix with nodes 0..n-2 in a chain and node n-1 attached to n-3.
inline EvenLattice d_n(int n) {
  if (n < 4) throw ValidationError("D_n needs n >= 4");
  const auto k = static_cast<std::size_t>(n);
  IntMatrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) g(i, i) = 2;
  for (std::size_t i = 0; i + 2 < k; ++i) g(i, i + 1) = g(i + 1, i) = -1;
  g(k - 1, k - 3) = g(k - 3, k - 1) = -1;
  return EvenLattice(g, "D" + std::to_string(n));
}

/// Bourbaki labelling: chain 1-3-4-5-6-7-8 with node 2 attached to 4.
inline EvenLattice e8() {
  IntMatrix g(8, 8);
  for (std::size_t i = 0; i < 8; ++i) g(i, i) = 2;
  auto link = [&](std::size_t a, std::size_t b) { g(a - 1, b - 1) = g(b - 1, a - 1) = -1; };
  link(1, 3);
  link(3, 4);
  link(4, 5);
  link(5, 6);
  link(6, 7);
  link(7, 8);
  link(2, 4);
  return EvenLattice(g, "E8");
}

inline EvenLattice orthogonal_sum(const EvenLattice& a, const EvenLattice& b, std::string name = "") {
  const std::size_t n = a.rank(), m = b.rank();
  IntMatrix g(n + m, n + m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
  return EvenLattice(g, name.empty() ? a.name() + "+" + b.name() : std::move(name));
}

inline EvenLattice e8e8() { return orthogonal_sum(e8(), e8(), "E8E8"); }

/// D16 = {x in Z^16 : sum even} glued with (1/2,...,1/2). Worked in
/// doubled coordinates so the generating set is integral.
inline EvenLattice d16_plus() {
  constexpr std::size_t n = 16;
  IntMatrix gens(n + 1, n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    gens(i, i) = 2;
    gens(i, i + 1) = -2;
  }
  gens(n - 1, n - 2) = 2;
  gens(n - 1, n - 1) = 2;
  for (std::size_t j = 0; j < n; ++j) gens(n, j) = 1;
  IntMatrix b = exact::row_lattice_basis(gens);
  IntMatrix scaled = b * b.transpose();
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = scaled(i, j) / 4;
  return EvenLattice(g, "D16+");
}

inline std::vector<std::string> builtin_names() { return {"A1", "A2", "A3", "D4", "D8", "D16", "E8", "E8E8", "D16+"}; }

/// "A<n>", "D<n>", "E8", "E8E8" or "D16+".
inline EvenLattice builtin(const std::string& name) {
  if (name == "E8") return e8();
  if (name == "E8E8" || name == "E8^2" || name == "E8xE8") return e8e8();
  if (name == "D16+" || name == "D16plus") return d16_plus();
  if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D')) {
    const std::string digits = name.substr(1);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() <= 3) {
      const int n = std::stoi(digits);
      return name[0] == 'A' ? a_n(n) : d_n(n);
    }
  }
  throw ValidationError("unknown built-in lattice '" + name + "'");
}

}  // namespace genusforge::lattice
