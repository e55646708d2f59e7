#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "genusforge/errors.hpp"
#include "genusforge/exact/rational.hpp"

namespace genusforge::codes {

using exact::Integer;

/// A word of length <= 64; bit i is coordinate i.
using Word = std::uint64_t;

inline constexpr int kMaxLength = 64;

inline int weight(Word w) { return std::popcount(w); }

inline Word all_ones(int n) { return n == 64 ? ~Word(0) : (Word(1) << n) - 1; }

/// Reduced row-echelon basis over F2. The pivot of a row is its lowest
/// coordinate; rows are sorted by pivot and every pivot column is zero in
/// all other rows. Two codes are equal iff their bases are equal.
inline std::vector<Word> rref(std::vector<Word> rows) {
  std::vector<Word> out;
  for (int col = 0; col < kMaxLength && !rows.empty(); ++col) {
    const Word bit = Word(1) << col;
    std::size_t hit = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i] & bit) {
        hit = i;
        break;
      }
    if (hit == rows.size()) continue;
    const Word piv = rows[hit];
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(hit));
    for (auto& r : rows)
      if (r & bit) r ^= piv;
    for (auto& r : out)
      if (r & bit) r ^= piv;
    out.push_back(piv);
    std::erase(rows, Word(0));
  }
  return out;
}

class BinaryCode {
 public:
  BinaryCode() = default;

  /// Any spanning set; dependent rows are dropped.
  BinaryCode(int length, std::vector<Word> rows) : n_(length) {
    if (length < 0 || length > kMaxLength) throw ValidationError("code length must lie in [0, 64]");
    for (Word r : rows)
      if (r & ~all_ones(length)) throw ValidationError("code word has a bit beyond length " + std::to_string(length));
    basis_ = rref(std::move(rows));
  }

  int length() const { return n_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Word>& basis() const { return basis_; }

  Word pivot_mask() const {
    Word m = 0;
    for (Word r : basis_) m |= r & (~r + 1);
    return m;
  }

  /// Reduces w against the basis; zero iff w is a codeword.
  Word reduce(Word w) const {
    for (Word r : basis_)
      if (w & r & (~r + 1)) w ^= r;
    return w;
  }
  bool contains(Word w) const { return reduce(w) == 0; }

  friend bool operator==(const BinaryCode& a, const BinaryCode& b) { return a.n_ == b.n_ && a.basis_ == b.basis_; }

 private:
  int n_ = 0;
  std::vector<Word> basis_;
};

/// For each non-pivot column f, e_f plus the pivots of the rows that have
/// a 1 in column f.
inline BinaryCode dual_code(const BinaryCode& c) {
  const Word piv = c.pivot_mask();
  std::vector<Word> rows;
  for (int f = 0; f < c.length(); ++f) {
    const Word fb = Word(1) << f;
    if (piv & fb) continue;
    Word v = fb;
    for (Word r : c.basis())
      if (r & fb) v |= r & (~r + 1);
    rows.push_back(v);
  }
  return BinaryCode(c.length(), rows);
}

inline bool contains_allones(const BinaryCode& c) { return c.contains(all_ones(c.length())); }

/// Calls f on every codeword (Gray-code order, starting at 0).
template <class F>
void for_each_codeword(const BinaryCode& c, F&& f, int max_dim = 40) {
  if (c.dim() > max_dim)
    throw LimitExceeded("codeword enumeration of dimension " + std::to_string(c.dim()) + " exceeds limit " + std::to_string(max_dim));
  const std::uint64_t total = std::uint64_t(1) << c.dim();
  Word w = 0;
  f(w);
  for (std::uint64_t i = 1; i < total; ++i) {
    w ^= c.basis()[static_cast<std::size_t>(std::countr_zero(i))];
    f(w);
  }
}

/// W[i] = number of codewords of weight i.
inline std::vector<Integer> weight_enumerator(const BinaryCode& c, int max_dim = 40) {
  std::vector<std::uint64_t> w(static_cast<std::size_t>(c.length()) + 1, 0);
  for_each_codeword(c, [&](Word x) { ++w[static_cast<std::size_t>(weight(x))]; }, max_dim);
  std::vector<Integer> out;
  for (auto v : w) out.emplace_back(static_cast<unsigned long>(v));
  return out;
}

/// Every codeword has weight divisible by 8, decided from the basis alone:
/// wt(sum_S b) = sum over nonempty T in S of (-2)^(|T|-1) wt(meet of T), so
/// mod 8 only |T| <= 3 matters and the condition is equivalent to
/// 8 | wt(b_i), 4 | wt(b_i & b_j), 2 | wt(b_i & b_j & b_l).
inline bool weights_divisible_by_8(const BinaryCode& c) {
  const auto& b = c.basis();
  const std::size_t k = b.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (weight(b[i]) % 8) return false;
    for (std::size_t j = i + 1; j < k; ++j) {
      if (weight(b[i] & b[j]) % 4) return false;
      for (std::size_t l = j + 1; l < k; ++l)
        if (weight(b[i] & b[j] & b[l]) % 2) return false;
    }
  }
  return true;
}

inline bool is_even(const BinaryCode& c) {
  for (Word r : c.basis())
    if (weight(r) % 2) return false;
  return true;
}

inline bool is_self_orthogonal(const BinaryCode& c) {
  for (Word a : c.basis())
    for (Word b : c.basis())
      if (weight(a & b) % 2) return false;
  return true;
}

/// 𝒞 and 𝒟 of a framed VOA.
struct FramedPair {
  BinaryCode c_code;
  BinaryCode d_code;
};

struct FramedCheck {
  std::string name;
  bool passed;
};

struct FramedReport {
  std::vector<FramedCheck> checks;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

inline FramedReport check_framed_conditions(const FramedPair& p, bool self_dual) {
  const BinaryCode& c = p.c_code;
  const BinaryCode& d = p.d_code;
  if (c.length() != d.length())
    throw ValidationError("code lengths differ: " + std::to_string(c.length()) + " vs " + std::to_string(d.length()));
  bool orth = true;
  for (Word x : d.basis())
    for (Word y : c.basis())
      if (weight(x & y) % 2) orth = false;
  FramedReport rep;
  rep.checks.push_back({"D in C-perp", orth});
  rep.checks.push_back({"C even", is_even(c)});
  rep.checks.push_back({"wt(D) in 8Z", weights_divisible_by_8(d)});
  if (self_dual) {
    rep.checks.push_back({"16 | r", c.length() % 16 == 0});
    rep.checks.push_back({"D = C-perp", d == dual_code(c)});
    rep.checks.push_back({"1^r in D", contains_allones(d)});
  }
  return rep;
}

}  // namespace genusforge::codes
