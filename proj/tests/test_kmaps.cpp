#include <gtest/gtest.h>

#include <random>

#include "fcone/kmaps.hpp"
#include "oracles.hpp"

using namespace fcone;

namespace {

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return ratio(num(rng), den(rng));
}

KDivisor random_kdivisor(int n, std::mt19937& rng) {
  KDivisor h(n);
  std::uniform_int_distribution<Label> label(1, n);
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << n) - 1);
  for (int t = 0; t < 4; ++t) h.add_l(label(rng), random_rational(rng));
  for (int t = 0; t < 10; ++t) {
    const Subset s(n, mask(rng));
    if (s.size() >= 2) h.add_b(s, random_rational(rng));
  }
  return h;
}

BoundaryCombo random_combo(int n, std::mt19937& rng) {
  BoundaryCombo c{n, {}};
  for (int s = 2; s <= n; ++s) c.a[s] = random_rational(rng);
  return c;
}

}  // namespace

TEST(KBuild, ExpandsSymmetricCombos) {
  const KDivisor b4 = k_build(4, {}, BoundaryCombo{4, {{4, Rational(1)}}});
  ASSERT_EQ(b4.b_terms().size(), 1U);
  EXPECT_EQ(b4.b_coeff(Subset::full(4)), Rational(1));

  const KDivisor b2 = k_build(4, {}, BoundaryCombo{4, {{2, Rational(1)}}});
  EXPECT_EQ(b2.b_terms().size(), 6U);
  for (const auto& [s, q] : b2.b_terms()) {
    EXPECT_EQ(s.size(), 2);
    EXPECT_EQ(q, Rational(1));
  }
  EXPECT_THROW(k_build(4, {}, BoundaryCombo{4, {{5, Rational(1)}}}), std::invalid_argument);
  EXPECT_THROW(k_build(4, {}, BoundaryCombo{4, {{1, Rational(1)}}}), std::invalid_argument);
  EXPECT_THROW(k_build(4, {{5, Rational(1)}}, BoundaryCombo{4, {}}), std::invalid_argument);
}

TEST(KDivisor, BKeysAreNotComplementIdentified) {
  KDivisor h(5);
  h.add_b(Subset::of(5, {1, 2}), Rational(1));
  EXPECT_EQ(h.b_coeff(Subset::of(5, {3, 4, 5})), Rational(0));
  EXPECT_THROW(h.add_b(Subset::of(5, {1}), Rational(1)), std::invalid_argument);
}

TEST(CanonicalClass, SmallCases) {
  const KDivisor k5 = canonical_class(5);
  for (Label i = 1; i <= 5; ++i) EXPECT_EQ(k5.l_coeff(i), Rational(-2));
  for (const auto& [s, q] : k5.b_terms()) EXPECT_EQ(q, Rational(s.size() - 2));
  EXPECT_EQ(k5.b_terms().size(), 10U + 5U + 1U);

  EXPECT_EQ(canonical_class(4), Rational(-2) * total_l(4) + symmetric_boundary(4, 3) +
                                    Rational(2) * symmetric_boundary(4, 4));
  EXPECT_EQ(canonical_class(3), Rational(-2) * total_l(3) + symmetric_boundary(3, 3));
  EXPECT_EQ(canonical_class(2), Rational(-2) * total_l(2));
}

TEST(PullbackAlpha, Examples) {
  const MDivisor b4 = pullback_alpha(symmetric_boundary(4, 4));
  ASSERT_EQ(b4.terms().size(), 1U);
  EXPECT_EQ(b4.coefficient(Subset::of(5, {5})), Rational(1));
  EXPECT_EQ(b4.psi_coefficient(5), Rational(-1));

  const MDivisor k4 = pullback_alpha(canonical_class(4));
  EXPECT_EQ(k4.coefficient(Subset::of(5, {5})), Rational(2));
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    const Subset s(5, mask);
    if (s.size() == 3) EXPECT_EQ(k4.coefficient(s), Rational(1));
    if (s.size() == 2) EXPECT_EQ(k4.coefficient(s), Rational(0));
  }
  EXPECT_EQ(k4.terms().size(), 5U);

  for (int n = 3; n <= 7; ++n) EXPECT_TRUE(pullback_alpha(total_l(n)).is_zero());
  EXPECT_THROW(pullback_alpha(canonical_class(2)), std::invalid_argument);
}

TEST(PullbackAlpha, AgreesWithRuleOracle) {
  std::mt19937 rng(21);
  for (int n = 3; n <= 7; ++n) {
    const KDivisor h = random_kdivisor(n, rng);
    const MDivisor pulled = pullback_alpha(h);
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << (n + 1)); ++mask) {
      const Rational expected = oracle::alpha_coefficient(n, mask, [&](std::uint64_t t) -> Rational {
        auto it = h.b_terms().find(Subset(n, t));
        return it == h.b_terms().end() ? Rational(0) : it->second;
      });
      ASSERT_EQ(pulled.coefficient(Subset(n + 1, mask)), expected);
    }
  }
}

TEST(PullbackBeta, Examples) {
  EXPECT_EQ(pullback_beta(canonical_class(4), 1), Rational(-5));
  EXPECT_EQ(pullback_beta(canonical_class(4) + symmetric_boundary(4, 4), 3), Rational(-6));
  const KDivisor lemma5 = log_canonical(BoundaryCombo{5, {{2, Rational(1, 4)}, {4, Rational(1, 4)}, {5, Rational(1)}}});
  for (Label i = 1; i <= 5; ++i) EXPECT_EQ(pullback_beta(lemma5, i), Rational(-33, 4));
  for (int n = 3; n <= 8; ++n) {
    for (Label i = 1; i <= n; ++i) EXPECT_EQ(pullback_beta(canonical_class(n), i), Rational(-(2 * n - 3)));
  }
  EXPECT_THROW(pullback_beta(canonical_class(4), 5), std::invalid_argument);
  EXPECT_THROW(pullback_beta(canonical_class(4), 0), std::invalid_argument);

  // Only the L_i term and the listed B-keys contribute.
  KDivisor h(4);
  h.add_l(2, Rational(7));
  h.add_b(Subset::of(4, {1, 3, 4}), Rational(2));
  h.add_b(Subset::of(4, {1, 2}), Rational(5));
  EXPECT_EQ(pullback_beta(h, 2), Rational(5));
  EXPECT_EQ(pullback_beta(h, 1), Rational(0));
}

TEST(PullbackBeta, TwoPointsOnlyFullSetContributes) {
  KDivisor h(2);
  h.add_b(Subset::full(2), Rational(3));
  h.add_l(1, Rational(1));
  EXPECT_EQ(pullback_beta(h, 1), Rational(-2));
  EXPECT_EQ(pullback_beta(h, 2), Rational(-3));
}

TEST(KMapsProperties, PullbacksAreLinear) {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 5;
    const KDivisor h1 = random_kdivisor(n, rng), h2 = random_kdivisor(n, rng);
    const Rational a = random_rational(rng), b = random_rational(rng);
    const KDivisor combo = a * h1 + b * h2;
    EXPECT_EQ(pullback_alpha(combo), a * pullback_alpha(h1) + b * pullback_alpha(h2));
    for (Label i = 1; i <= n; ++i) {
      EXPECT_EQ(pullback_beta(combo, i), a * pullback_beta(h1, i) + b * pullback_beta(h2, i));
    }
  }
}

TEST(KMapsProperties, ShapeConstancyForSymmetricDivisors) {
  std::mt19937 rng(23);
  for (int n = 3; n <= 6; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const BoundaryCombo combo = random_combo(n, rng);
      const Rational k_mult = Rational(trial);
      const KDivisor h = k_mult * canonical_class(n) + k_build(n, {}, combo);
      const MDivisor pulled = pullback_alpha(h);
      std::map<PartitionShape, Rational> by_shape;
      for (const auto& p : enumerate_four_partitions(n + 1)) {
        const Rational v = f_curve_value(pulled, p);
        auto [it, inserted] = by_shape.try_emplace(shape_of(p, n + 1), v);
        ASSERT_EQ(it->second, v) << "n=" << n << " " << to_string(p);
      }
      EXPECT_EQ(by_shape.size(), enumerate_shapes(n + 1, n + 1).size());
    }
  }
}

TEST(KMapsProperties, BetaDegreeOfCombosIsLabelIndependent) {
  std::mt19937 rng(24);
  for (int n = 3; n <= 8; ++n) {
    const BoundaryCombo combo = random_combo(n, rng);
    for (const bool with_k : {false, true}) {
      const KDivisor h = with_k ? log_canonical(combo) : k_build(n, {}, combo);
      // l - a_n - a_{n-1}, plus -(2n-3) when K_n is present.
      Rational expected = -combo.coefficient(n) - combo.coefficient(n - 1);
      if (with_k) expected -= Rational(2 * n - 3);
      for (const auto& b : pullback_beta_all(h)) EXPECT_EQ(b.degree, expected) << "n=" << n << " i=" << b.i;
    }
  }
}

TEST(ChsAmple, LemmaWitnesses) {
  const ChsDecision d4 = chs_ample(canonical_class(4) + symmetric_boundary(4, 4), AmpleSense::AntiAmple);
  EXPECT_EQ(d4.verdict, ChsVerdict::Holds);
  for (const auto& b : d4.beta) EXPECT_EQ(b.degree, Rational(6));  // degrees of the negation

  const KDivisor h5 = log_canonical(BoundaryCombo{5, {{2, Rational(1, 4)}, {4, Rational(1, 4)}, {5, Rational(1)}}});
  EXPECT_EQ(chs_ample(h5, AmpleSense::AntiAmple).verdict, ChsVerdict::Holds);
  EXPECT_EQ(chs_ample(h5, AmpleSense::Ample).verdict, ChsVerdict::Fails);
}

TEST(ChsAmple, CanonicalClassAloneIsRefutedOnTheAlphaSide) {
  const ChsDecision d = chs_ample(canonical_class(4), AmpleSense::AntiAmple);
  EXPECT_EQ(d.verdict, ChsVerdict::Fails);
  EXPECT_FALSE(d.failing_beta);
  for (const auto& b : d.beta) EXPECT_EQ(b.degree, Rational(5));
  ASSERT_TRUE(d.alpha.witness);
  EXPECT_EQ(d.alpha.witness->value, Rational(0));
}

TEST(ChsAmple, BetaSideCanFailAlone) {
  // alpha-side of L vanishes, so make alpha pass with B-terms and break beta.
  const KDivisor h = -(canonical_class(4) + symmetric_boundary(4, 4)) + Rational(-10) * total_l(4);
  const ChsDecision d = chs_ample(h, AmpleSense::Ample);
  EXPECT_EQ(d.verdict, ChsVerdict::Fails);
  EXPECT_EQ(d.alpha.verdict, Verdict::Positive);
  EXPECT_EQ(d.failing_beta, 1);
}

TEST(ChsAmple, UndecidedBeyondRange) {
  // F-negative with negative beta degree on n = 7, yet nothing is certified.
  const KDivisor h = log_canonical(
      BoundaryCombo{7, {{2, Rational(-1)}, {3, Rational(-1)}, {5, Rational(2)}, {6, Rational(6)}, {7, Rational(10)}}});
  const ChsDecision d = chs_ample(h, AmpleSense::AntiAmple);
  EXPECT_EQ(d.verdict, ChsVerdict::Undecided);
  EXPECT_EQ(d.alpha.verdict, Verdict::PositiveButUndecidedAmpleness);
  EXPECT_EQ(d.alpha.curves_checked, 1701U);
  EXPECT_FALSE(d.failing_beta.has_value());
  for (const auto& b : d.beta) EXPECT_EQ(b.degree, Rational(27));
}

TEST(ChsAmple, AmpleOfNegationMatchesAntiAmple) {
  std::mt19937 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 4;
    const KDivisor h = trial % 2 ? random_kdivisor(n, rng) : log_canonical(random_combo(n, rng));
    const ChsDecision a = chs_ample(h, AmpleSense::Ample);
    const ChsDecision b = chs_ample(-h, AmpleSense::AntiAmple);
    EXPECT_EQ(a.verdict, b.verdict);
    EXPECT_EQ(a.beta, b.beta);
    EXPECT_EQ(a.failing_beta, b.failing_beta);
    EXPECT_EQ(a.alpha.verdict, b.alpha.verdict);
    EXPECT_EQ(a.alpha.min_value, b.alpha.min_value);
    EXPECT_EQ(a.alpha.max_value, b.alpha.max_value);
    ASSERT_EQ(a.alpha.witness.has_value(), b.alpha.witness.has_value());
    if (a.alpha.witness) EXPECT_EQ(a.alpha.witness->partition, b.alpha.witness->partition);
  }
}
