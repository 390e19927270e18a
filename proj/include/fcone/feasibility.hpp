#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fcone/rational.hpp"

namespace fcone {

/// Variables are identified by integer index; for boundary combinations the
/// index is the subset size s of the coefficient a_s.
using Point = std::map<int, Rational>;

enum class Relation {
  StrictlyNegative,  ///< form < 0
  NonPositive,       ///< form <= 0
};

/// constant + sum coefficients[v] * x_v, compared against zero.
struct LinearForm {
  Rational constant;
  std::map<int, Rational> coefficients;
  Relation relation = Relation::StrictlyNegative;

  bool strict() const { return relation == Relation::StrictlyNegative; }
  /// Drops zero coefficients.
  void normalize_zeros();
  Rational evaluate(const Point& point) const;
  bool satisfied_by(const Point& point) const;

  bool operator==(const LinearForm& other) const = default;
  bool operator<(const LinearForm& other) const;
};

/// "3a2 - a3 - 1 < 0".
std::string to_string(const LinearForm& form, const std::string& variable_prefix = "a");

enum class BoundKind { AtLeast, AtMost };

struct Bound {
  int variable = 0;
  BoundKind kind = BoundKind::AtLeast;
  Rational value;
};

/// x >= v becomes v - x <= 0; x <= v becomes x - v <= 0.
LinearForm to_form(const Bound& bound);

struct Multiplier {
  std::size_t form = 0;
  Rational lambda;
  bool operator==(const Multiplier&) const = default;
};

enum class FeasibilityStatus { Feasible, Infeasible };

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Feasible;
  /// The system that was decided: the input forms followed by one form per
  /// bound. Certificate indices refer to this list.
  std::vector<LinearForm> system;
  /// Feasible: a point satisfying every form of `system` exactly.
  Point point;
  /// Infeasible: nonnegative multipliers whose combination of `system` is a
  /// contradictory constant form. Only positive multipliers are listed.
  std::vector<Multiplier> certificate;

  bool feasible() const { return status == FeasibilityStatus::Feasible; }
};

/// Exact decision of a mixed strict/non-strict linear system by Fourier-Motzkin
/// elimination. Every derived row carries its multiplier vector over the
/// original system, which becomes the certificate on infeasibility; feasible
/// points come from back-substitution, preferring small-denominator values.
FeasibilityResult solve_feasibility(std::span<const LinearForm> forms, std::span<const Bound> bounds = {});

/// Independent re-checks by substitution.
bool check_point(std::span<const LinearForm> system, const Point& point);
bool check_certificate(std::span<const LinearForm> system, std::span<const Multiplier> certificate);
bool check_result(const FeasibilityResult& result);

}  // namespace fcone
