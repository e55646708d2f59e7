#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "genusforge/codes/code.hpp"

namespace genusforge::codes {

inline constexpr std::uint64_t kDefaultLexicodeBallCap = std::uint64_t(1) << 24;

namespace detail {

// Echelon basis keyed by the highest set bit. Reducing a word against it
// yields the smallest integer in its coset, which doubles as a syndrome.
class TopEchelon {
 public:
  void add(Word v) { rows_.push_back(v); }  // callers add strictly increasing top bits
  Word reduce(Word w) const {
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it)
      if (w & top(*it)) w ^= *it;
    return w;
  }
  Word pivots() const {
    Word m = 0;
    for (Word r : rows_) m |= top(r);
    return m;
  }
  const std::vector<Word>& rows() const { return rows_; }

 private:
  static Word top(Word r) { return Word(1) << (63 - std::countl_zero(r)); }
  std::vector<Word> rows_;
};

// Calls f on every word of length m and weight <= w.
template <class F>
void for_each_light_word(int m, int w, F&& f, Word acc = 0, int from = 0) {
  f(acc);
  if (w == 0) return;
  for (int i = from; i < m; ++i) for_each_light_word(m, w - 1, f, acc | (Word(1) << i), i + 1);
}

inline std::uint64_t ball_size(int m, int w) {
  std::uint64_t total = 0, c = 1;
  for (int i = 0; i <= w && i <= m; ++i) {
    total += c;
    c = c * static_cast<std::uint64_t>(m - i) / static_cast<std::uint64_t>(i + 1);
  }
  return total;
}

}  // namespace detail

/// Greedy code: scan the integers 0, 1, 2, ... < 2^n (bit i = coordinate i)
/// and admit a word when its distance to the span of the admitted words is
/// at least d.
///
/// Words below 2^m are exactly those supported on the first m coordinates,
/// so the code restricted to them is lexicode(m, d), and at most one new
/// basis word has top bit m: 2^m + y for the least y with d(y, C_m) >= d-1.
/// Candidates y are the least coset representatives in increasing order; a
/// coset is within distance d-2 iff its syndrome is hit by a word of weight
/// <= d-2.
inline BinaryCode lexicode(int n, int d, std::uint64_t ball_cap = kDefaultLexicodeBallCap) {
  if (n < 0 || n > kMaxLength) throw ValidationError("lexicode length must lie in [0, 64]");
  if (d < 1) throw ValidationError("lexicode distance must be positive");
  detail::TopEchelon c;
  for (int m = 0; m < n; ++m) {
    const int reach = d - 2;
    if (reach >= 0 && detail::ball_size(m, reach) > ball_cap)
      throw LimitExceeded("lexicode syndrome ball exceeds limit " + std::to_string(ball_cap));
    std::unordered_set<Word> near;
    if (reach >= 0) detail::for_each_light_word(m, reach, [&](Word e) { near.insert(c.reduce(e)); });
    const Word free = all_ones(m) & ~c.pivots();
    Word y = 0;
    bool found = false;
    do {
      if (!near.contains(y)) {
        found = true;
        break;
      }
      y = (y - free) & free;
    } while (y != 0);
    if (found) c.add((Word(1) << m) | y);
  }
  return BinaryCode(n, c.rows());
}

}  // namespace genusforge::codes
