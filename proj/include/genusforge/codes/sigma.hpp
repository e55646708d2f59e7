#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "genusforge/codes/code.hpp"
#include "genusforge/exact/rational.hpp"

namespace genusforge::codes {

using exact::Rational;

inline constexpr int kDefaultSigmaCap = 24;

struct SigmaOptions {
  int max_length = kDefaultSigmaCap;
  std::uint64_t node_budget = 0;  // 0: unlimited
  int threads = 0;                // 0: GENUSFORGE_THREADS, else hardware
};

/// counts[k] = number of codes of dimension k found. complete is false when
/// the node budget stopped the search, in which case counts are lower
/// bounds.
struct SigmaProfile {
  int length = 0;
  std::vector<Integer> counts;
  bool complete = true;
  std::uint64_t nodes = 0;
};

inline int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GENUSFORGE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {

// Codes of length n all of whose weights are divisible by div, generated
// once each as RREF bases: rows are added in decreasing pivot order, and a
// new row with pivot p is zero below p and on the existing pivots.
class DivisibleCodeSearch {
 public:
  DivisibleCodeSearch(int n, int div, int max_dim, std::uint64_t budget, std::atomic<std::uint64_t>& spent,
                      std::atomic<bool>& stop)
      : n_(n), div_(div), max_dim_(max_dim), budget_(budget), spent_(spent), stop_(stop),
        counts_(static_cast<std::size_t>(max_dim) + 1, 0) {}

  // Calls f(v) for each admissible next row of the code spanned by words.
  template <class F>
  void children(const std::vector<Word>& words, Word pivots, int min_pivot, F&& f) const {
    for (int p = 0; p < min_pivot; ++p) {
      const Word above = all_ones(n_) & ~all_ones(p + 1);
      const Word free = above & ~pivots;
      Word s = 0;
      do {
        const Word v = (Word(1) << p) | s;
        if (admissible(words, v)) f(v, p);
        s = (s - free) & free;
      } while (s != 0);
    }
  }

  void run(std::vector<Word>& words, Word pivots, int min_pivot, int dim) {
    if (stop_.load(std::memory_order_relaxed)) return;
    ++counts_[static_cast<std::size_t>(dim)];
    if (++local_ == 4096) flush();
    if (dim == max_dim_) return;
    children(words, pivots, min_pivot, [&](Word v, int p) {
      const std::size_t old = words.size();
      for (std::size_t i = 0; i < old; ++i) words.push_back(words[i] ^ v);
      run(words, pivots | (Word(1) << p), p, dim + 1);
      words.resize(old);
    });
  }

  void flush() {
    const auto total = spent_.fetch_add(local_, std::memory_order_relaxed) + local_;
    local_ = 0;
    if (budget_ != 0 && total > budget_) stop_.store(true);
  }

  const std::vector<std::uint64_t>& counts() const { return counts_; }

 private:
  bool admissible(const std::vector<Word>& words, Word v) const {
    if (weight(v) % div_) return false;
    for (std::size_t i = 1; i < words.size(); ++i)
      if (weight(words[i] ^ v) % div_) return false;
    return true;
  }

  int n_, div_, max_dim_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& spent_;
  std::atomic<bool>& stop_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t local_ = 0;
};

}  // namespace detail

/// Counts the codes of length n, dimension 0..max_dim, with every weight
/// divisible by div. The subtrees below the first row are distributed over
/// workers; the totals do not depend on the schedule.
inline SigmaProfile divisible_code_profile(int n, int div, int max_dim, const SigmaOptions& opt = {}) {
  if (n < 0 || n > kMaxLength) throw ValidationError("code length must lie in [0, 64]");
  if (div < 1) throw ValidationError("divisor must be positive");
  max_dim = std::max(0, std::min(max_dim, n));
  std::atomic<std::uint64_t> spent{0};
  std::atomic<bool> stop{false};
  SigmaProfile out;
  out.length = n;
  std::vector<std::uint64_t> total(static_cast<std::size_t>(max_dim) + 1, 0);
  total[0] = 1;

  std::vector<std::pair<Word, int>> frontier;
  if (max_dim >= 1) {
    detail::DivisibleCodeSearch root(n, div, max_dim, opt.node_budget, spent, stop);
    root.children({0}, 0, n, [&](Word v, int p) { frontier.emplace_back(v, p); });
  }
  std::atomic<std::size_t> next{0};
  const int nw = std::max(1, std::min<int>(worker_count(opt.threads), static_cast<int>(frontier.size())));
  std::vector<std::vector<std::uint64_t>> partial(static_cast<std::size_t>(nw));
  auto work = [&](int id) {
    detail::DivisibleCodeSearch s(n, div, max_dim, opt.node_budget, spent, stop);
    std::vector<Word> words;
    for (std::size_t i; (i = next.fetch_add(1)) < frontier.size();) {
      words = {0, frontier[i].first};
      s.run(words, Word(1) << frontier[i].second, frontier[i].second, 1);
    }
    s.flush();
    partial[static_cast<std::size_t>(id)] = s.counts();
  };
  if (nw == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(work, i);
    for (auto& t : pool) t.join();
  }
  for (const auto& p : partial)
    for (std::size_t k = 1; k < p.size(); ++k) total[k] += p[k];
  out.complete = !stop.load();
  out.nodes = spent.load() + 1;
  for (auto v : total) out.counts.emplace_back(static_cast<unsigned long>(v));
  return out;
}

namespace detail {

/// Codes of length r and dimension 0..max_dim containing 1^r with every
/// weight divisible by div.
///
/// Such a code is <1^r> + D' with D' its intersection with {x_(r-1) = 0},
/// and when div | r every D' of dimension k-1 with weights in div*Z arises
/// exactly once. So the count in dimension k is the number of
/// (k-1)-dimensional such codes of length r-1.
inline SigmaProfile allones_profile(int r, int div, int max_dim, const SigmaOptions& opt) {
  if (r < 1) throw ValidationError("code length must be positive");
  if (r > opt.max_length)
    throw LimitExceeded("sigma length " + std::to_string(r) + " exceeds limit " + std::to_string(opt.max_length));
  max_dim = std::max(0, std::min(max_dim, r));
  SigmaProfile out;
  out.length = r;
  out.counts.assign(static_cast<std::size_t>(max_dim) + 1, Integer(0));
  if (r % div != 0 || max_dim == 0) return out;
  const SigmaProfile inner = divisible_code_profile(r - 1, div, max_dim - 1, opt);
  for (std::size_t k = 0; k < inner.counts.size(); ++k) out.counts[k + 1] = inner.counts[k];
  out.complete = inner.complete;
  out.nodes = inner.nodes;
  return out;
}

}  // namespace detail

/// sigma_k(r) for k = 0..max_dim: codes of length r and dimension k that
/// contain 1^r and have all weights divisible by 8.
inline SigmaProfile sigma_profile(int r, int max_dim, const SigmaOptions& opt = {}) {
  return detail::allones_profile(r, 8, max_dim, opt);
}

inline Integer sigma_k(int r, int k, const SigmaOptions& opt = {}) {
  if (k < 0 || k > r) throw ValidationError("dimension must lie in [0, length]");
  const SigmaProfile p = sigma_profile(r, k, opt);
  if (!p.complete) throw LimitExceeded("sigma search exceeded its node budget");
  return p.counts[static_cast<std::size_t>(k)];
}

/// (1 / (2^r r!)) sum_k 2^(k(k-1)/2 + 1) sigma_k(r) from a complete profile.
inline Rational relative_mass(const SigmaProfile& p) {
  if (!p.complete) throw LimitExceeded("sigma search exceeded its node budget");
  Integer num = 0;
  for (std::size_t k = 1; k < p.counts.size(); ++k)
    num += exact::pow2(static_cast<unsigned>(k * (k - 1) / 2 + 1)) * p.counts[k];
  const Integer den = exact::pow2(static_cast<unsigned>(p.length)) * exact::factorial(static_cast<unsigned>(p.length));
  return Rational(num) / Rational(den);
}

/// The mass sum over every k with sigma_k(r) > 0; the search runs to
/// exhaustion to establish that range.
inline Rational relative_mass_rhs(int r, const SigmaOptions& opt = {}) {
  if (r < 16 || r % 16 != 0) throw ValidationError("invalid length " + std::to_string(r) + ": the mass formula needs 16 | r");
  return relative_mass(sigma_profile(r, r, opt));
}

}  // namespace genusforge::codes
