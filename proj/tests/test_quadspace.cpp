#include <gtest/gtest.h>

#include "genusforge/quadspace.hpp"
#include "support/library.hpp"

using namespace genusforge;
using namespace genusforge::quadspace;
using exact::CyclotomicNumber;
using exact::Rational;

namespace {

FiniteQuadraticSpace a2_form() { return cyclic_space(3, Rational(2, 3)); }
FiniteQuadraticSpace a1_form() { return cyclic_space(2, Rational(1, 2)); }

// D8 discriminant form: v = (1,0) with q = 1, s = (0,1) with q = 0, b(v,s) = 1/2.
FiniteQuadraticSpace d8_form() {
  return build_space_raw({2, 2}, {PhaseMod2(Rational(1)), PhaseMod2(Rational(0))},
                         {{PhaseMod1(Rational(0)), PhaseMod1(Rational(1, 2))}, {PhaseMod1(Rational(1, 2)), PhaseMod1(Rational(0))}});
}

std::vector<std::vector<std::int64_t>> element_lists(const std::vector<Subgroup>& subs) {
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& s : subs) out.push_back(s.elements);
  return out;
}

}  // namespace

TEST(BuildSpace, SpecExamples) {
  auto t = build_space(FiniteAbelianGroup(), {}, {});
  EXPECT_EQ(t.order(), 1);

  // Z/2, q(g) = 1/2: b(g,g) must be q(g) mod 1 = 1/2; 1/4 is rejected.
  EXPECT_NO_THROW(build_space(FiniteAbelianGroup({2}), {PhaseMod2(Rational(1, 2))}, {{PhaseMod1(Rational(1, 2))}}));
  EXPECT_THROW(build_space(FiniteAbelianGroup({2}), {PhaseMod2(Rational(1, 2))}, {{PhaseMod1(Rational(1, 4))}}),
               ValidationError);
  EXPECT_THROW(build_space(FiniteAbelianGroup({2}), {PhaseMod2(Rational(1, 2))}, {{PhaseMod1(Rational(3, 4))}}),
               ValidationError);

  // Hyperbolic plane from q(a) = q(b) = 0, q(a+b) = 1: polarization gives b(a,b) = 1/2.
  auto h = build_space_from_q(FiniteAbelianGroup({2, 2}), {PhaseMod2(Rational(0)), PhaseMod2(Rational(0))},
                              {{{0, 1}, PhaseMod2(Rational(1))}});
  EXPECT_EQ(h.b_matrix()[0][1], PhaseMod1(Rational(1, 2)));

  // Z/2 with q = 0 is degenerate.
  EXPECT_THROW(build_space(FiniteAbelianGroup({2}), {PhaseMod2(Rational(0))}, {{PhaseMod1(Rational(0))}}), ValidationError);
}

TEST(BuildSpace, RejectsInconsistentData) {
  // d^2 q not in 2Z.
  EXPECT_THROW(cyclic_space(3, Rational(1, 3)), ValidationError);
  // Asymmetric b.
  EXPECT_THROW(build_space_raw({2, 2}, {PhaseMod2(Rational(0)), PhaseMod2(Rational(0))},
                               {{PhaseMod1(Rational(0)), PhaseMod1(Rational(1, 2))}, {PhaseMod1(Rational(0)), PhaseMod1(Rational(0))}}),
               ValidationError);
  // Wrong shape.
  EXPECT_THROW(build_space(FiniteAbelianGroup({2}), {}, {}), ValidationError);
  // Broken divisibility chain.
  EXPECT_THROW(FiniteAbelianGroup({4, 2}), ValidationError);
}

TEST(Eval, SpecExamples) {
  auto a2 = a2_form();
  EXPECT_TRUE(a2.eval_q({0}).is_zero());
  EXPECT_EQ(a2.eval_q({2}), PhaseMod2(Rational(2, 3)));
  auto h = testlib::hyperbolic(2);
  EXPECT_EQ(h.eval_b({1, 0}, {0, 1}), PhaseMod1(Rational(1, 2)));
}

TEST(Eval, PolarizationHoldsOnLibrary) {
  for (const auto& [name, s] : testlib::space_library(32)) {
    const auto& g = s.group();
    for (std::int64_t x = 0; x < g.order(); ++x)
      for (std::int64_t y = 0; y < g.order(); ++y) {
        const Rational lhs = Rational(s.b_scaled(x, y), s.scale());
        const PhaseMod2 diff = PhaseMod2(Rational(s.q_scaled(g.add(x, y)), s.scale())) -
                               PhaseMod2(Rational(s.q_scaled(x), s.scale())) - PhaseMod2(Rational(s.q_scaled(y), s.scale()));
        ASSERT_EQ(PhaseMod1(lhs), exact::half(diff)) << name;
      }
  }
}

TEST(DirectSum, SpecExamples) {
  auto a1 = a1_form();
  auto t = trivial_space();
  EXPECT_EQ(direct_sum(a1, t), a1);

  auto z6 = direct_sum(a1, a2_form());
  EXPECT_EQ(z6.group().invariant_factors(), (std::vector<std::int64_t>{6}));
  EXPECT_EQ(signature_mod8(z6), (1 + 2) % 8);

  auto aa = direct_sum(a1, a1);
  EXPECT_EQ(aa.group().invariant_factors(), (std::vector<std::int64_t>{2, 2}));
  EXPECT_EQ(aa.q_gen()[0], PhaseMod2(Rational(1, 2)));
  EXPECT_EQ(aa.q_gen()[1], PhaseMod2(Rational(1, 2)));
  EXPECT_TRUE(aa.b_matrix()[0][1].is_zero());
}

TEST(PrimaryDecomposition, SpecExamples) {
  EXPECT_TRUE(primary_decomposition(trivial_space()).empty());

  auto z6 = direct_sum(a1_form(), a2_form());
  auto parts = primary_decomposition(z6);
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_TRUE(is_isometric(parts.at(2), a1_form()).has_value());
  EXPECT_TRUE(is_isometric(parts.at(3), a2_form()).has_value());

  auto h = testlib::hyperbolic(2);
  auto hp = primary_decomposition(h);
  ASSERT_EQ(hp.size(), 1u);
  EXPECT_TRUE(is_isometric(hp.at(2), h).has_value());
}

TEST(PrimaryDecomposition, RecombinesOnLibrary) {
  for (const auto& [name, s] : testlib::space_library(32)) {
    auto parts = primary_decomposition(s);
    FiniteQuadraticSpace acc = trivial_space();
    for (const auto& [p, part] : parts) {
      for (auto d : part.group().invariant_factors()) {
        std::int64_t m = d;
        while (m % p == 0) m /= p;
        EXPECT_EQ(m, 1) << name;
      }
      acc = direct_sum(acc, part);
    }
    EXPECT_TRUE(is_isometric(acc, s).has_value()) << name;
  }
}

TEST(Jordan, SpecExamples) {
  EXPECT_EQ(jordan_blocks_odd(a2_form(), 3), (std::vector<JordanBlock>{{3, 1, 1}}));
  EXPECT_EQ(jordan_blocks_odd(cyclic_space(3, Rational(4, 3)), 3), (std::vector<JordanBlock>{{3, 1, -1}}));
  EXPECT_EQ(jordan_blocks_odd(cyclic_space(9, Rational(2, 9)), 3), (std::vector<JordanBlock>{{3, 2, 1}}));
  EXPECT_THROW(jordan_blocks_odd(a1_form(), 3), ValidationError);
}

TEST(Jordan, InvariantsDecideOddIsometry) {
  // For odd p-groups the (rank, theta product) per scale must agree exactly
  // when the brute-force search finds an isometry.
  std::vector<testlib::NamedSpace> odd;
  for (auto& ns : testlib::space_library(27))
    if (ns.space.order() % 2 == 1 && ns.space.order() > 1 && prime_factors(ns.space.order()).size() == 1) odd.push_back(ns);
  for (std::size_t i = 0; i < odd.size(); ++i)
    for (std::size_t j = i; j < odd.size(); ++j) {
      const auto& a = odd[i].space;
      const auto& b = odd[j].space;
      if (a.order() != b.order()) continue;
      const std::int64_t p = prime_factors(a.order())[0];
      const bool same_inv = jordan_invariants(jordan_blocks_odd(a, p)) == jordan_invariants(jordan_blocks_odd(b, p));
      EXPECT_EQ(same_inv, is_isometric(a, b).has_value()) << odd[i].name << " vs " << odd[j].name;
    }
}

TEST(Gauss, SpecExamples) {
  EXPECT_EQ(gauss_sum(trivial_space()), CyclotomicNumber(1));
  EXPECT_EQ(gauss_sum(a1_form()), CyclotomicNumber(1) + CyclotomicNumber::zeta(4, 1));
  EXPECT_EQ(gauss_sum(a2_form()), CyclotomicNumber(1) + Rational(2) * CyclotomicNumber::zeta(3, 1));
  EXPECT_EQ(signature_mod8(trivial_space()), 0);
  EXPECT_EQ(signature_mod8(a1_form()), 1);
  EXPECT_EQ(signature_mod8(a2_form()), 2);
}

TEST(Gauss, NormAndQuotientInvariance) {
  for (const auto& [name, s] : testlib::space_library(32)) {
    auto g = gauss_sum(s);
    EXPECT_EQ(g * g.conj(), CyclotomicNumber(Rational(s.order()))) << name;
    const int sig = signature_mod8(s);
    for (const auto& c : isotropic_subgroups(s)) {
      auto quo = quotient_space(s, c);
      EXPECT_EQ(quo.order() * c.order() * c.order(), s.order()) << name;
      EXPECT_NO_THROW(check_nondegenerate(quo)) << name;
      EXPECT_EQ(signature_mod8(quo), sig) << name;
    }
  }
}

TEST(Isotropic, SpecExamples) {
  EXPECT_EQ(isotropic_subgroups(trivial_space()).size(), 1u);

  auto d8 = d8_form();
  auto subs = isotropic_subgroups(d8);
  ASSERT_EQ(subs.size(), 3u);
  const auto& g = d8.group();
  EXPECT_EQ(subs[1].elements, (std::vector<std::int64_t>{0, g.index({0, 1})}));
  EXPECT_EQ(subs[2].elements, (std::vector<std::int64_t>{0, g.index({1, 1})}));

  // On Z/4 the value q(g) = 3/2 gives b(g,g) = 1/2, so 2g pairs trivially
  // with everything and the form is rejected. Z/8 with q(g) = 1/8 has the
  // single nontrivial isotropic subgroup {0, 4g}.
  EXPECT_THROW(cyclic_space(4, Rational(3, 2)), ValidationError);
  auto z8 = cyclic_space(8, Rational(1, 8));
  auto s8 = isotropic_subgroups(z8);
  ASSERT_EQ(s8.size(), 2u);
  EXPECT_EQ(s8[1].elements, (std::vector<std::int64_t>{0, 4}));
}

TEST(Isotropic, CapIsEnforced) {
  auto big = testlib::hyperbolic(128);
  EXPECT_THROW(isotropic_subgroups(big, 4096), LimitExceeded);
}

TEST(Isotropic, MatchesNaiveOracle) {
  for (const auto& [name, s] : testlib::space_library(32)) {
    EXPECT_EQ(element_lists(isotropic_subgroups(s)), testlib::naive_isotropic(s)) << name;
  }
}

TEST(Quotient, SpecExamples) {
  auto d8 = d8_form();
  auto subs = isotropic_subgroups(d8);
  EXPECT_TRUE(is_isometric(quotient_space(d8, subs[0]), d8).has_value());
  EXPECT_EQ(quotient_space(d8, subs[1]).order(), 1);

  auto h = testlib::hyperbolic(2);
  auto a = generate_subgroup(h.group(), {{1, 0}});
  EXPECT_EQ(orthogonal_complement(h, a).elements, a.elements);
  EXPECT_EQ(quotient_space(h, a).order(), 1);

  auto bad = generate_subgroup(d8.group(), {{1, 0}});
  EXPECT_THROW(quotient_space(d8, bad), ValidationError);
}

TEST(Isometry, SpecExamples) {
  auto h = testlib::hyperbolic(2);
  auto w = is_isometric(h, h);
  ASSERT_TRUE(w.has_value());

  auto aa = direct_sum(a1_form(), a1_form());
  EXPECT_FALSE(is_isometric(h, aa).has_value());

  auto p = direct_sum(a2_form(), a2_form());
  auto m = direct_sum(cyclic_space(3, Rational(4, 3)), cyclic_space(3, Rational(4, 3)));
  auto iso = is_isometric(p, m);
  ASSERT_TRUE(iso.has_value());
  // The witness preserves q on generators.
  for (std::size_t i = 0; i < p.rank(); ++i) EXPECT_EQ(m.eval_q((*iso)[i]), p.q_gen()[i]);

  EXPECT_THROW(is_isometric(testlib::hyperbolic(64), testlib::hyperbolic(64), 3000), LimitExceeded);
}

TEST(Json, RoundTrip) {
  for (const auto& [name, s] : testlib::space_library(16)) {
    auto j = space_to_json(s);
    EXPECT_EQ(space_from_json(j), s) << name;
  }
  auto orth = space_from_json(io::json::parse(R"({"orders":[2,3],"q":["1/2","2/3"]})"));
  EXPECT_EQ(orth.group().invariant_factors(), (std::vector<std::int64_t>{6}));
  EXPECT_THROW(space_from_json(io::json::parse(R"({"orders":[2],"q":["x"]})")), ValidationError);
  EXPECT_THROW(space_from_json(io::json::parse(R"({"q":["1/2"]})")), ValidationError);
}
