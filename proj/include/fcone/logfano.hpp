#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcone/combinat.hpp"
#include "fcone/feasibility.hpp"
#include "fcone/kmaps.hpp"

namespace fcone {

/// One necessary condition for K_n + sum a_s B[s] to be anti-ample, as an
/// affine form in (a_2, ..., a_n).
struct Constraint {
  enum class Kind { FCurve, Beta };

  Kind kind = Kind::FCurve;
  LinearForm form;
  /// F-curve constraints: the partition of {1..n+1} the form was evaluated on.
  std::optional<FourPartition> partition;
  /// Reduced systems: the shape (special label n+1) the partition represents.
  std::optional<PartitionShape> shape;
};

/// The F-curve forms f(alpha^*(K_n + D), P) < 0 for every 4-block partition P
/// of {1..n+1} (reduced = false) or for one representative per shape with
/// special label n+1 (reduced = true), followed by the beta-degree form.
std::vector<Constraint> generate_constraints(int n, bool reduced);

std::vector<LinearForm> forms_of(std::span<const Constraint> constraints);

enum class WitnessVerdict { Verified, Refuted, Undecided };

struct WitnessReport {
  int n = 0;
  BoundaryCombo combo;
  WitnessVerdict verdict = WitnessVerdict::Refuted;
  std::string reason;
  /// Extremes of the F-values of alpha^*(K_n + D) over every partition.
  Rational f_min;
  Rational f_max;
  std::size_t f_count = 0;
  /// beta_i^*(K_n + D); the same for every i on symmetric divisors.
  Rational beta_degree;
  /// Boundary coefficients lie in [0,1] and anti-ampleness is strict, so the
  /// (1 - eps) D perturbation keeps it.
  bool klt_note = false;
  /// Certificate of the anti-ampleness test (values are those of -(K_n + D)).
  ChsDecision decision;
};

/// Full-enumeration check that K_n + D is anti-ample with D's coefficients in
/// [0,1]. Conclusive only for n <= 6; larger n can be refuted but not verified.
WitnessReport verify_witness(const BoundaryCombo& combo, const PositivityOptions& options = {});

struct SearchResult {
  std::vector<Constraint> constraints;
  FeasibilityResult feasibility;
  /// Present when feasible: the found point re-verified by verify_witness.
  std::optional<WitnessReport> witness;
};

/// Solves the reduced constraint system under the given bounds and re-verifies
/// any feasible point by full enumeration.
SearchResult search_witness(int n, std::span<const Bound> bounds, const PositivityOptions& options = {});

/// 0 <= a_s <= 1 for s = 2..n.
std::vector<Bound> unit_box(int n);

const char* to_string(WitnessVerdict v);

}  // namespace fcone
