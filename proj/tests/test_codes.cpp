#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "genusforge/codes.hpp"
#include "support/oracles.hpp"

using namespace genusforge;
using namespace genusforge::codes;
using testlib::closure_counts;
using testlib::greedy_scan;
using testlib::span_words;

namespace {

BinaryCode random_code(std::mt19937_64& rng, int n, int k) {
  std::vector<Word> rows;
  for (int i = 0; i < k; ++i) rows.push_back(rng() & all_ones(n));
  return BinaryCode(n, rows);
}

int min_weight(const BinaryCode& c) {
  int best = c.length() + 1;
  for_each_codeword(c, [&](Word w) {
    if (w != 0) best = std::min(best, weight(w));
  });
  return best;
}

}  // namespace

TEST(BinaryCode, RrefIsCanonical) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const BinaryCode c = random_code(rng, n, 1 + static_cast<int>(rng() % 8));
    std::vector<Word> mixed = c.basis();
    for (std::size_t i = 1; i < mixed.size(); ++i) mixed[i] ^= mixed[i - 1];
    std::reverse(mixed.begin(), mixed.end());
    mixed.push_back(0);
    if (!mixed.empty()) mixed.push_back(mixed.front() ^ mixed.back());
    EXPECT_EQ(BinaryCode(n, mixed), c);
    EXPECT_EQ(span_words(c.basis()), span_words(mixed));
    Word piv = 0;
    for (Word r : c.basis()) {
      const Word low = r & (~r + 1);
      EXPECT_GT(low, piv);
      piv = low;
      for (Word s : c.basis())
        if (s != r) EXPECT_EQ(s & low, 0u);
    }
  }
  EXPECT_THROW(BinaryCode(3, {0b1000}), ValidationError);
}

TEST(BinaryCode, Dual) {
  std::vector<Word> even;
  for (int i = 0; i + 1 < 16; ++i) even.push_back(Word(1) << i | Word(1) << (i + 1));
  const BinaryCode e(16, even);
  EXPECT_EQ(e.dim(), 15);
  const BinaryCode ed = dual_code(e);
  EXPECT_EQ(ed.dim(), 1);
  EXPECT_EQ(span_words(ed.basis()), (std::vector<Word>{0, all_ones(16)}));

  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const BinaryCode c = random_code(rng, n, static_cast<int>(rng() % (n + 1)));
    const BinaryCode d = dual_code(c);
    EXPECT_EQ(d.dim(), n - c.dim());
    EXPECT_EQ(dual_code(d), c);
    // parity-check oracle: every word orthogonal to all of c lies in d
    if (n <= 12)
      for (Word w = 0; w <= all_ones(n); ++w) {
        bool orth = true;
        for (Word r : c.basis()) orth = orth && weight(r & w) % 2 == 0;
        EXPECT_EQ(orth, d.contains(w));
      }
  }
}

TEST(BinaryCode, WeightEnumerator) {
  const BinaryCode one(16, {all_ones(16)});
  const auto w = weight_enumerator(one);
  ASSERT_EQ(w.size(), 17u);
  for (int i = 0; i <= 16; ++i) EXPECT_EQ(w[static_cast<std::size_t>(i)], (i == 0 || i == 16) ? 1 : 0);
  EXPECT_TRUE(contains_allones(one));

  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const BinaryCode c = random_code(rng, 14, 1 + static_cast<int>(rng() % 10));
    const auto we = weight_enumerator(c);
    Integer total = 0;
    for (const auto& x : we) total += x;
    EXPECT_EQ(total, exact::pow2(static_cast<unsigned>(c.dim())));
    std::vector<long> direct(15, 0);
    for (Word x : span_words(c.basis())) ++direct[static_cast<std::size_t>(weight(x))];
    for (std::size_t i = 0; i < direct.size(); ++i) EXPECT_EQ(we[i], direct[i]);
  }
  EXPECT_THROW(weight_enumerator(BinaryCode(20, {1, 2, 4, 8}), 3), LimitExceeded);
}

TEST(BinaryCode, WeightsDivisibleBy8MatchesEnumeration) {
  std::mt19937_64 rng(4);
  int positives = 0;
  for (int t = 0; t < 3000; ++t) {
    const int n = 16;
    // bias towards 8-divisible rows so positives occur
    std::vector<Word> rows;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) {
      Word w;
      do w = rng() & all_ones(n);
      while (weight(w) % 8 != 0);
      rows.push_back(w);
    }
    const BinaryCode c(n, rows);
    bool all8 = true;
    for (Word x : span_words(c.basis())) all8 = all8 && weight(x) % 8 == 0;
    EXPECT_EQ(weights_divisible_by_8(c), all8);
    positives += all8;
  }
  EXPECT_GT(positives, 10);
}

TEST(Framed, Conditions) {
  std::vector<Word> even;
  for (int i = 0; i + 1 < 16; ++i) even.push_back(Word(1) << i | Word(1) << (i + 1));
  const FramedPair good{BinaryCode(16, even), BinaryCode(16, {all_ones(16)})};
  const auto r = check_framed_conditions(good, true);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(r.checks.size(), 6u);

  const FramedPair eight{BinaryCode(8, {0b11}), BinaryCode(8, {all_ones(8)})};
  const auto r8 = check_framed_conditions(eight, true);
  EXPECT_FALSE(r8.all_passed());
  for (const auto& c : r8.checks)
    if (c.name == "16 | r") EXPECT_FALSE(c.passed);
  EXPECT_TRUE(check_framed_conditions(eight, false).all_passed());

  const FramedPair skew{BinaryCode(16, {0x180}), BinaryCode(16, {0xFF})};
  const auto rs = check_framed_conditions(skew, false);
  EXPECT_FALSE(rs.checks[0].passed);
  EXPECT_TRUE(rs.checks[1].passed);
  EXPECT_TRUE(rs.checks[2].passed);

  EXPECT_THROW(check_framed_conditions({BinaryCode(8, {}), BinaryCode(16, {})}, false), ValidationError);
}

TEST(Sigma, MatchesClosureOracle) {
  for (int r = 1; r <= 12; ++r) {
    const auto got = sigma_profile(r, r);
    const auto want = closure_counts(r, 8, true);
    for (int k = 0; k <= r; ++k) {
      const long w = k >= 1 && k <= static_cast<int>(want.size()) ? want[static_cast<std::size_t>(k - 1)] : 0;
      EXPECT_EQ(got.counts[static_cast<std::size_t>(k)], w) << "r=" << r << " k=" << k;
    }
  }
  EXPECT_EQ(sigma_k(8, 1), 1);
  EXPECT_EQ(sigma_k(8, 2), 0);
}

TEST(Sigma, OtherDivisorsMatchClosureOracle) {
  for (int div : {2, 4}) {
    for (int r = 1; r <= (div == 2 ? 6 : 10); ++r) {
      const auto got = detail::allones_profile(r, div, r, {});
      const auto want = closure_counts(r, div, true);
      for (int k = 1; k <= r; ++k) {
        const long w = k <= static_cast<int>(want.size()) ? want[static_cast<std::size_t>(k - 1)] : 0;
        EXPECT_EQ(got.counts[static_cast<std::size_t>(k)], w) << "div=" << div << " r=" << r << " k=" << k;
      }
    }
    for (int n = 1; n <= (div == 2 ? 6 : 8); ++n) {
      const auto got = divisible_code_profile(n, div, n);
      const auto want = closure_counts(n, div, false);
      for (int k = 0; k <= n; ++k) {
        const long w = k < static_cast<int>(want.size()) ? want[static_cast<std::size_t>(k)] : 0;
        EXPECT_EQ(got.counts[static_cast<std::size_t>(k)], w) << "div=" << div << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Sigma, Length16SmallDimensions) {
  const Integer c16_8 = exact::factorial(16) / (exact::factorial(8) * exact::factorial(8));
  const Integer c8_4 = exact::factorial(8) / (exact::factorial(4) * exact::factorial(4));
  EXPECT_EQ(sigma_k(16, 1), 1);
  // {0, 1, v, v + 1} with wt(v) = 8
  EXPECT_EQ(sigma_k(16, 2), c16_8 / 2);
  // ordered pairs of weight-8 words meeting in 4 places, 24 per code
  EXPECT_EQ(sigma_k(16, 3), c16_8 * c8_4 * c8_4 / 24);
}

TEST(Sigma, ScheduleIndependentAndBudgeted) {
  SigmaOptions one, many;
  one.threads = 1;
  many.threads = 3;
  const auto a = sigma_profile(16, 3, one);
  const auto b = sigma_profile(16, 3, many);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_TRUE(a.complete && b.complete);

  SigmaOptions tight;
  tight.node_budget = 5000;
  const auto p = sigma_profile(16, 16, tight);
  EXPECT_FALSE(p.complete);
  EXPECT_EQ(p.counts[1], 1);
  EXPECT_LE(p.counts[4], 60810750);
  EXPECT_THROW(sigma_k(16, 4, tight), LimitExceeded);

  EXPECT_THROW(sigma_k(32, 1), LimitExceeded);
  EXPECT_THROW(sigma_k(8, 9), ValidationError);
}

TEST(Sigma, CountedCodesAreSelfOrthogonal) {
  // Collect codes from the closure oracle at r = 16 up to dimension 3 would
  // be slow; sample them from random 8-divisible words instead.
  std::mt19937_64 rng(5);
  int seen = 0;
  for (int t = 0; t < 20000 && seen < 200; ++t) {
    std::vector<Word> rows{all_ones(16)};
    for (int i = 0; i < 2; ++i) {
      Word w;
      do w = rng() & all_ones(16);
      while (weight(w) != 8);
      rows.push_back(w);
    }
    const BinaryCode c(16, rows);
    if (!weights_divisible_by_8(c)) continue;
    ++seen;
    EXPECT_TRUE(is_self_orthogonal(c));
    EXPECT_TRUE(contains_allones(c));
  }
  EXPECT_GT(seen, 0);
}

TEST(Mass, InvalidLength) {
  EXPECT_THROW(relative_mass_rhs(8), ValidationError);
  EXPECT_THROW(relative_mass_rhs(24), ValidationError);
  SigmaOptions small;
  small.max_length = 12;
  EXPECT_THROW(relative_mass_rhs(16, small), LimitExceeded);
}

TEST(Lexicode, SmallExamples) {
  const BinaryCode l44 = lexicode(4, 4);
  EXPECT_EQ(span_words(l44.basis()), (std::vector<Word>{0, 0b1111}));
  const BinaryCode l84 = lexicode(8, 4);
  EXPECT_EQ(l84.dim(), 4);
  const auto w = weight_enumerator(l84);
  for (int i = 0; i <= 8; ++i) EXPECT_EQ(w[static_cast<std::size_t>(i)], i == 0 || i == 8 ? 1 : i == 4 ? 14 : 0);
  EXPECT_EQ(lexicode(5, 1).dim(), 5);
  EXPECT_EQ(lexicode(0, 3).dim(), 0);
  EXPECT_THROW(lexicode(65, 2), ValidationError);
  EXPECT_THROW(lexicode(8, 0), ValidationError);
}

TEST(Lexicode, MatchesGreedyScan) {
  for (int n = 1; n <= 13; ++n)
    for (int d = 1; d <= 6; ++d) {
      const auto scanned = greedy_scan(n, d);
      EXPECT_EQ(span_words(lexicode(n, d).basis()), scanned) << "n=" << n << " d=" << d;
    }
}

TEST(Lexicode, MinimumDistance) {
  for (int n = 1; n <= 20; ++n)
    for (int d = 2; d <= 6; ++d) {
      const BinaryCode c = lexicode(n, d);
      if (c.dim() > 0) EXPECT_GE(min_weight(c), d) << "n=" << n << " d=" << d;
    }
}

TEST(Lexicode, Length48) {
  const BinaryCode c = lexicode(48, 4);
  EXPECT_EQ(c.dim(), 41);
  EXPECT_TRUE(is_even(c));
  const BinaryCode d = dual_code(c);
  EXPECT_TRUE(contains_allones(d));
  EXPECT_TRUE(weights_divisible_by_8(d));
  for_each_codeword(d, [&](Word w) { EXPECT_EQ(weight(w) % 8, 0); });
  EXPECT_TRUE(check_framed_conditions({c, d}, true).all_passed());
}

TEST(CodesJson, RoundTrip) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const BinaryCode c = random_code(rng, 1 + static_cast<int>(rng() % 64), 1 + static_cast<int>(rng() % 6));
    EXPECT_EQ(code_from_json(code_to_json(c)), c);
  }
  const auto j = code_to_json(BinaryCode(4, {0b0001, 0b0110}));
  EXPECT_EQ(j["basis"][0], "1000");
  EXPECT_EQ(j["basis"][1], "0110");
  EXPECT_THROW(code_from_json(json::parse(R"({"length": 4, "basis": ["10"]})")), ValidationError);
  EXPECT_THROW(code_from_json(json::parse(R"({"length": 4, "basis": ["10x0"]})")), ValidationError);
  EXPECT_THROW(code_from_json(json::parse(R"({"basis": []})")), ValidationError);
}
