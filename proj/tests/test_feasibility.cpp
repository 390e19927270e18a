#include <gtest/gtest.h>

#include <random>

#include "fcone/feasibility.hpp"
#include "oracles.hpp"

using namespace fcone;

namespace {

LinearForm form(Rational constant, std::map<int, Rational> coeffs, Relation rel = Relation::StrictlyNegative) {
  LinearForm f;
  f.constant = std::move(constant);
  f.coefficients = std::move(coeffs);
  f.relation = rel;
  return f;
}

std::vector<LinearForm> lemma6_forms() {
  return {
      form(Rational(-1), {{2, Rational(3)}, {3, Rational(-1)}}),
      form(Rational(0), {{3, Rational(2)}, {4, Rational(-1)}}),
      form(Rational(2), {{2, Rational(-3)}, {4, Rational(3)}, {6, Rational(-1)}}),
  };
}

}  // namespace

TEST(LinearForm, Printing) {
  EXPECT_EQ(to_string(lemma6_forms()[0]), "3a2 - a3 - 1 < 0");
  EXPECT_EQ(to_string(lemma6_forms()[1]), "2a3 - a4 < 0");
  EXPECT_EQ(to_string(lemma6_forms()[2]), "-3a2 + 3a4 - a6 + 2 < 0");
  EXPECT_EQ(to_string(form(Rational(0), {}, Relation::NonPositive)), "0 <= 0");
  EXPECT_EQ(to_string(to_form(Bound{4, BoundKind::AtLeast, Rational(0)})), "-a4 <= 0");
  EXPECT_EQ(to_string(to_form(Bound{6, BoundKind::AtMost, Rational(1)})), "a6 - 1 <= 0");
}

TEST(SolveFeasibility, LemmaSixIsInfeasible) {
  const std::vector<Bound> bounds{{4, BoundKind::AtLeast, Rational(0)}, {6, BoundKind::AtMost, Rational(1)}};
  const auto r = solve_feasibility(lemma6_forms(), bounds);
  ASSERT_FALSE(r.feasible());
  EXPECT_EQ(r.system.size(), 5U);
  EXPECT_TRUE(oracle::certificate_is_contradiction(r));
  EXPECT_TRUE(check_result(r));
  // Every one of the three forms and both bounds is needed.
  EXPECT_EQ(r.certificate.size(), 5U);
}

TEST(SolveFeasibility, LemmaSixWithoutBoundsIsFeasible) {
  const auto r = solve_feasibility(lemma6_forms());
  ASSERT_TRUE(r.feasible());
  EXPECT_TRUE(check_point(r.system, r.point));
}

TEST(SolveFeasibility, TrivialSystems) {
  const auto empty = solve_feasibility({});
  EXPECT_TRUE(empty.feasible());
  EXPECT_TRUE(empty.point.empty());

  const std::vector<LinearForm> zero_strict{form(Rational(0), {})};
  const auto r1 = solve_feasibility(zero_strict);
  ASSERT_FALSE(r1.feasible());
  EXPECT_TRUE(oracle::certificate_is_contradiction(r1));

  const std::vector<LinearForm> zero_weak{form(Rational(0), {}, Relation::NonPositive)};
  EXPECT_TRUE(solve_feasibility(zero_weak).feasible());
}

TEST(SolveFeasibility, StrictnessIsTracked) {
  // 0 < x < 1
  const std::vector<LinearForm> open{form(Rational(-1), {{1, Rational(1)}}), form(Rational(0), {{1, Rational(-1)}})};
  const auto r = solve_feasibility(open);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.point.at(1), Rational(1, 2));

  // x <= 0 and x >= 0: the single point 0.
  const std::vector<LinearForm> pinned{form(Rational(0), {{1, Rational(1)}}, Relation::NonPositive),
                                       form(Rational(0), {{1, Rational(-1)}}, Relation::NonPositive)};
  const auto p = solve_feasibility(pinned);
  ASSERT_TRUE(p.feasible());
  EXPECT_EQ(p.point.at(1), Rational(0));

  // x < 0 and x >= 0.
  const std::vector<LinearForm> empty{form(Rational(0), {{1, Rational(1)}}),
                                      form(Rational(0), {{1, Rational(-1)}}, Relation::NonPositive)};
  const auto e = solve_feasibility(empty);
  ASSERT_FALSE(e.feasible());
  EXPECT_TRUE(oracle::certificate_is_contradiction(e));
}

TEST(SolveFeasibility, PrefersSimpleValues) {
  // 1/5 < x < 2/7 has no integer; smallest denominator is 1/4.
  const std::vector<LinearForm> narrow{form(Rational(-2, 7), {{1, Rational(1)}}), form(Rational(1, 5), {{1, Rational(-1)}})};
  const auto r = solve_feasibility(narrow);
  ASSERT_TRUE(r.feasible());
  EXPECT_EQ(r.point.at(1), Rational(1, 4));
}

TEST(SolveFeasibility, CertificateCheckerRejectsBadCertificates) {
  const std::vector<Bound> bounds{{4, BoundKind::AtLeast, Rational(0)}, {6, BoundKind::AtMost, Rational(1)}};
  auto r = solve_feasibility(lemma6_forms(), bounds);
  ASSERT_FALSE(r.feasible());
  auto broken = r.certificate;
  broken.front().lambda *= 2;
  EXPECT_FALSE(check_certificate(r.system, broken));
  auto negative = r.certificate;
  negative.front().lambda = -negative.front().lambda;
  EXPECT_FALSE(check_certificate(r.system, negative));
  EXPECT_FALSE(check_certificate(r.system, {}));
}

// 200 random systems in two or three boxed variables, decided against a
// brute-force vertex enumeration.
TEST(SolveFeasibility, AgreesWithVertexOracleOnRandomSystems) {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> coef(-4, 4), den(1, 3), count(1, 5), nvars(2, 3), coin(0, 1);
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int nv = nvars(rng);
    std::vector<int> vars;
    for (int v = 0; v < nv; ++v) vars.push_back(2 + v);
    std::vector<LinearForm> forms;
    const int nf = count(rng);
    for (int k = 0; k < nf; ++k) {
      LinearForm f;
      f.constant = ratio(coef(rng), den(rng));
      for (int v : vars) f.coefficients[v] = ratio(coef(rng), den(rng));
      f.relation = coin(rng) ? Relation::StrictlyNegative : Relation::NonPositive;
      f.normalize_zeros();
      forms.push_back(f);
    }
    std::vector<Bound> bounds;
    for (int v : vars) {
      bounds.push_back(Bound{v, BoundKind::AtLeast, Rational(-coef(rng) * coef(rng) - 1, 1)});
      bounds.push_back(Bound{v, BoundKind::AtMost, Rational(coef(rng) * coef(rng) + 1, 1)});
    }
    const auto r = solve_feasibility(forms, bounds);
    const bool expected = oracle::feasible_by_vertices(r.system, vars);
    ASSERT_EQ(r.feasible(), expected) << "trial " << trial;
    if (r.feasible()) {
      ++feasible;
      for (const auto& f : r.system) ASSERT_TRUE(f.satisfied_by(r.point)) << "trial " << trial << " " << to_string(f);
    } else {
      ++infeasible;
      ASSERT_TRUE(oracle::certificate_is_contradiction(r)) << "trial " << trial;
    }
  }
  // The generator has to exercise both outcomes.
  EXPECT_GT(feasible, 20);
  EXPECT_GT(infeasible, 20);
}

TEST(SolveFeasibility, TighterBoundsKeepInfeasibility) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coef(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 25; ++trial) {
    std::vector<LinearForm> forms;
    for (int k = 0; k < 3; ++k) {
      forms.push_back(form(Rational(coef(rng)), {{2, Rational(coef(rng))}, {3, Rational(coef(rng))}}));
      forms.back().normalize_zeros();
    }
    std::vector<Bound> loose{{2, BoundKind::AtLeast, Rational(-2)}, {2, BoundKind::AtMost, Rational(2)}};
    if (solve_feasibility(forms, loose).feasible()) continue;
    ++checked;
    std::vector<Bound> tight = loose;
    tight.push_back(Bound{3, BoundKind::AtMost, Rational(coef(rng))});
    tight.push_back(Bound{2, BoundKind::AtLeast, Rational(-1)});
    EXPECT_FALSE(solve_feasibility(forms, tight).feasible());
  }
  EXPECT_GT(checked, 0);
}
