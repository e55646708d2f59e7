#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "genusforge/lattice/lattice.hpp"

namespace genusforge::lattice {

inline constexpr int kDefaultThetaCap = 8;

inline void require_positive_definite(const EvenLattice& l) {
  auto sig = signature(l);
  if (sig.second != 0) throw NotPositiveDefinite("lattice '" + l.name() + "' is not positive definite");
}

namespace detail {

inline std::vector<std::vector<std::int64_t>> small_gram(const EvenLattice& l) {
  const std::size_t n = l.rank();
  std::vector<std::vector<std::int64_t>> g(n, std::vector<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!l.gram()(i, j).fits_slong_p() || abs(l.gram()(i, j)) > Integer(1L << 30))
        throw LimitExceeded("Gram entries too large for enumeration");
      g[i][j] = l.gram()(i, j).get_si();
    }
  return g;
}

}  // namespace detail

/// Calls visit(x, norm) for every nonzero x in Z^n with x G x^T <= max_norm.
///
/// Fincke-Pohst: x G x^T = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2 in floating
/// point, used only to bound the ranges; each leaf norm is recomputed
/// exactly in integers.
template <typename Visit>
void enumerate_short_vectors(const EvenLattice& l, std::int64_t max_norm, Visit&& visit) {
  require_positive_definite(l);
  const std::size_t n = l.rank();
  if (n == 0 || max_norm <= 0) return;
  const auto g = detail::small_gram(l);

  std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = static_cast<double>(g[i][j]);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t j = k; j < n; ++j) q[k][j] -= q[k][i] * q[i][j];
  }

  const double slack = 1e-7 * (static_cast<double>(max_norm) + 1.0);
  std::vector<std::int64_t> x(n, 0);
  std::vector<double> budget(n + 1, 0.0);
  budget[n] = static_cast<double>(max_norm);

  auto recurse = [&](auto&& self, std::size_t level) -> void {
    const std::size_t i = level - 1;
    double center = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * static_cast<double>(x[j]);
    const double rem = budget[level];
    const double r = std::sqrt(std::max(rem, 0.0) / q[i][i] + slack);
    const auto lo = static_cast<std::int64_t>(std::ceil(center - r));
    const auto hi = static_cast<std::int64_t>(std::floor(center + r));
    for (std::int64_t v = lo; v <= hi; ++v) {
      const double dv = static_cast<double>(v) - center;
      const double next = rem - q[i][i] * dv * dv;
      if (next < -slack) continue;
      x[i] = v;
      if (i == 0) {
        std::int64_t norm = 0;
        bool zero = true;
        for (std::size_t a = 0; a < n; ++a) {
          if (x[a] == 0) continue;
          zero = false;
          std::int64_t row = 0;
          for (std::size_t b = 0; b < n; ++b) row += g[a][b] * x[b];
          norm += x[a] * row;
        }
        if (!zero && norm <= max_norm) visit(x, norm);
      } else {
        budget[i] = next;
        self(self, i);
      }
    }
    x[i] = 0;
  };
  recurse(recurse, n);
}

inline std::vector<std::vector<std::int64_t>> short_vectors(const EvenLattice& l, std::int64_t max_norm) {
  std::vector<std::vector<std::int64_t>> out;
  enumerate_short_vectors(l, max_norm, [&](const std::vector<std::int64_t>& v, std::int64_t) { out.push_back(v); });
  return out;
}

/// c_m = #{v : (v,v) = 2m} for m = 0..k.
inline std::vector<Integer> theta_coefficients(const EvenLattice& l, int k, int cap = kDefaultThetaCap) {
  if (k < 0) throw ValidationError("number of theta terms must be nonnegative");
  if (k > cap) throw LimitExceeded("theta coefficient count " + std::to_string(k) + " exceeds cap " + std::to_string(cap));
  require_positive_definite(l);
  std::vector<std::int64_t> c(static_cast<std::size_t>(k) + 1, 0);
  c[0] = 1;
  enumerate_short_vectors(l, 2 * static_cast<std::int64_t>(k),
                          [&](const std::vector<std::int64_t>&, std::int64_t norm) { ++c[static_cast<std::size_t>(norm / 2)]; });
  std::vector<Integer> out;
  for (auto v : c) out.emplace_back(static_cast<long>(v));
  return out;
}

}  // namespace genusforge::lattice
