#include <gtest/gtest.h>

#include <random>

#include "fcone/serialize.hpp"

using namespace fcone;

TEST(MDivisorJson, ParsesNonCanonicalKeysAndEmitsCanonical) {
  const Json j = Json::parse(R"({"m":5, "psi":{"5":"3"},
      "delta":{"1,2,3":"1", "1,2,4":"1", "1,3,4":"1", "2,3,4":"1"}})");
  const MDivisor h = mdivisor_from_json(j);
  EXPECT_EQ(h, pullback_alpha(canonical_class(4) + symmetric_boundary(4, 4)));
  const Json out = to_json(h);
  EXPECT_EQ(out.dump(), R"({"m":5,"psi":{"5":"3"},"delta":{"1,5":"1","2,5":"1","3,5":"1","4,5":"1"}})");
  EXPECT_EQ(mdivisor_from_json(out), h);
}

TEST(MDivisorJson, RoundTripsRandomDivisors) {
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (int trial = 0; trial < 20; ++trial) {
    const int m = 4 + trial % 5;
    std::uniform_int_distribution<std::uint64_t> mask(1, (std::uint64_t{1} << m) - 2);
    MDivisor h(m);
    for (int k = 0; k < 10; ++k) h.add(Subset(m, mask(rng)), ratio(num(rng), den(rng)));
    EXPECT_EQ(mdivisor_from_json(Json::parse(to_json(h).dump())), h);
  }
}

TEST(MDivisorJson, RejectsFloatsAndBadKeys) {
  EXPECT_THROW(mdivisor_from_json(Json::parse(R"({"m":5,"psi":{"5":0.5}})")), std::invalid_argument);
  EXPECT_THROW(mdivisor_from_json(Json::parse(R"({"m":5,"psi":{"5":"1.5"}})")), std::invalid_argument);
  EXPECT_THROW(mdivisor_from_json(Json::parse(R"({"m":5,"delta":{"1,9":"1"}})")), std::invalid_argument);
  EXPECT_THROW(mdivisor_from_json(Json::parse(R"({"psi":{}})")), std::invalid_argument);
  EXPECT_EQ(mdivisor_from_json(Json::parse(R"({"m":5,"psi":{"5":2}})")).coefficient(Subset::of(5, {5})), Rational(2));
}

TEST(KDivisorJson, ComboShorthand) {
  const KDivisor h = kdivisor_from_json(Json::parse(R"({"n":5, "K":true, "a":{"2":"1/4","a4":"1/4","5":"1"}})"));
  EXPECT_EQ(h, log_canonical(BoundaryCombo{5, {{2, Rational(1, 4)}, {4, Rational(1, 4)}, {5, Rational(1)}}}));
  EXPECT_EQ(kdivisor_from_json(to_json(h)), h);

  const KDivisor explicit_terms = kdivisor_from_json(Json::parse(R"({"n":3, "L":{"1":"-2"}, "B":{"1,2":"1/4"}})"));
  EXPECT_EQ(explicit_terms.l_coeff(1), Rational(-2));
  EXPECT_EQ(explicit_terms.b_coeff(Subset::of(3, {1, 2})), Rational(1, 4));
  EXPECT_EQ(to_json(explicit_terms).dump(), R"({"n":3,"L":{"1":"-2"},"B":{"1,2":"1/4"}})");
  EXPECT_THROW(kdivisor_from_json(Json::parse(R"({"n":3, "K":"yes"})")), std::invalid_argument);
  EXPECT_THROW(kdivisor_from_json(Json::parse(R"({"n":3, "B":{"1":"1"}})")), std::invalid_argument);
}

TEST(CertificateJson, InfeasibleRoundTripAndIndependentCheck) {
  const auto cs = generate_constraints(6, true);
  const auto bounds = parse_bounds_spec("a4>=0,a6<=1");
  const FeasibilityResult r = solve_feasibility(forms_of(cs), bounds);
  const Json j = to_json(r);
  EXPECT_EQ(j.at("status"), "infeasible");
  ASSERT_TRUE(j.at("multipliers").is_array());
  EXPECT_EQ(j.at("multipliers")[0].at("lambda").get<std::string>().find('.'), std::string::npos);

  // Re-check from the serialized text only.
  const FeasibilityResult back = feasibility_from_json(Json::parse(j.dump()));
  EXPECT_EQ(back.system, r.system);
  EXPECT_EQ(back.certificate, r.certificate);
  EXPECT_TRUE(check_result(back));
}

TEST(CertificateJson, FeasibleRoundTrip) {
  const FeasibilityResult r = solve_feasibility(forms_of(generate_constraints(5, true)), unit_box(5));
  ASSERT_TRUE(r.feasible());
  const FeasibilityResult back = feasibility_from_json(Json::parse(to_json(r).dump()));
  EXPECT_EQ(back.point, r.point);
  EXPECT_TRUE(check_result(back));
}

TEST(SpecStrings, CombosAndBounds) {
  const auto combo = parse_combo_spec("a2=1/4, 4=1/4,a5=1");
  EXPECT_EQ(combo.size(), 3U);
  EXPECT_EQ(combo.at(2), Rational(1, 4));
  EXPECT_EQ(combo.at(5), Rational(1));
  EXPECT_TRUE(parse_combo_spec("").empty());
  EXPECT_THROW(parse_combo_spec("a2=0.25"), std::invalid_argument);
  EXPECT_THROW(parse_combo_spec("a2"), std::invalid_argument);
  EXPECT_THROW(parse_combo_spec("a2=1,a2=2"), std::invalid_argument);

  const auto bounds = parse_bounds_spec("a4>=0,a6<=1");
  ASSERT_EQ(bounds.size(), 2U);
  EXPECT_EQ(bounds[0].variable, 4);
  EXPECT_EQ(bounds[0].kind, BoundKind::AtLeast);
  EXPECT_EQ(bounds[1].kind, BoundKind::AtMost);
  EXPECT_EQ(to_string(bounds[1]), "a6<=1");
  EXPECT_THROW(parse_bounds_spec("a4>0"), std::invalid_argument);
  EXPECT_THROW(parse_bounds_spec("x4>=0"), std::invalid_argument);
}
