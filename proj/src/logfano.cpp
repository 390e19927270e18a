#include "fcone/logfano.hpp"

#include <stdexcept>

namespace fcone {

namespace {

LinearForm strict_form(const Rational& constant, const std::map<int, Rational>& coefficients) {
  LinearForm f;
  f.constant = constant;
  f.coefficients = coefficients;
  f.relation = Relation::StrictlyNegative;
  f.normalize_zeros();
  return f;
}

}  // namespace

std::vector<Constraint> generate_constraints(int n, bool reduced) {
  if (n < 3) throw std::invalid_argument("constraints need n >= 3 (n+1 >= 4 marked points), got " + std::to_string(n));
  const int m = n + 1;

  // The F-form and beta degree are linear in D, so each form is the value on
  // K_n plus sum_s a_s times the value on B[s].
  const MDivisor base = pullback_alpha(canonical_class(n));
  std::vector<std::pair<int, MDivisor>> per_s;
  for (int s = 2; s <= n; ++s) per_s.emplace_back(s, pullback_alpha(symmetric_boundary(n, s)));

  std::vector<Constraint> out;
  auto add_partition = [&](const FourPartition& p, std::optional<PartitionShape> shape) {
    std::map<int, Rational> coeffs;
    for (const auto& [s, h] : per_s) coeffs[s] = f_curve_value(h, p);
    Constraint c;
    c.kind = Constraint::Kind::FCurve;
    c.form = strict_form(f_curve_value(base, p), coeffs);
    c.partition = p;
    c.shape = shape;
    out.push_back(std::move(c));
  };

  if (reduced) {
    for (const auto& cls : enumerate_shapes(m, m)) add_partition(cls.representative, cls.shape);
  } else {
    for_each_four_partition(m, [&](const FourPartition& p) { add_partition(p, std::nullopt); });
  }

  std::map<int, Rational> beta_coeffs;
  for (int s = 2; s <= n; ++s) beta_coeffs[s] = pullback_beta(symmetric_boundary(n, s), 1);
  Constraint beta;
  beta.kind = Constraint::Kind::Beta;
  beta.form = strict_form(pullback_beta(canonical_class(n), 1), beta_coeffs);
  out.push_back(std::move(beta));
  return out;
}

std::vector<LinearForm> forms_of(std::span<const Constraint> constraints) {
  std::vector<LinearForm> out;
  out.reserve(constraints.size());
  for (const auto& c : constraints) out.push_back(c.form);
  return out;
}

WitnessReport verify_witness(const BoundaryCombo& combo, const PositivityOptions& options) {
  const int n = combo.n;
  if (n < 3) throw std::invalid_argument("witness check needs n >= 3, got " + std::to_string(n));
  for (const auto& [s, q] : combo.a) {
    if (s < 2 || s > n) throw std::invalid_argument("a_" + std::to_string(s) + " outside 2..n");
  }

  WitnessReport report;
  report.n = n;
  report.combo = combo;
  const KDivisor h = log_canonical(combo);
  report.decision = chs_ample(h, AmpleSense::AntiAmple, options);
  // The decision tested -H; flip back to the values of H itself.
  report.f_min = -report.decision.alpha.max_value;
  report.f_max = -report.decision.alpha.min_value;
  report.f_count = report.decision.alpha.curves_checked;
  report.beta_degree = pullback_beta(h, 1);

  bool in_unit_interval = true;
  std::string outside;
  for (int s = 2; s <= n; ++s) {
    const Rational a = combo.coefficient(s);
    if (a < 0 || a > 1) {
      in_unit_interval = false;
      if (outside.empty()) outside = "a" + std::to_string(s) + " = " + to_string(a);
    }
  }

  const ChsDecision& d = report.decision;
  if (d.verdict == ChsVerdict::Fails) {
    report.verdict = WitnessVerdict::Refuted;
    if (d.alpha.witness) {
      report.reason = "F-value " + to_string(Rational(-d.alpha.witness->value)) + " >= 0 on " +
                      to_string(d.alpha.witness->partition);
    } else {
      report.reason = "beta degree " + to_string(Rational(-d.beta[static_cast<std::size_t>(*d.failing_beta - 1)].degree)) +
                      " >= 0 at label " + std::to_string(*d.failing_beta);
    }
  } else if (!in_unit_interval) {
    report.verdict = WitnessVerdict::Refuted;
    report.reason = "boundary coefficient " + outside + " outside [0,1]";
  } else if (d.verdict == ChsVerdict::Undecided) {
    report.verdict = WitnessVerdict::Undecided;
    report.reason = "all F-values negative, but n+1 = " + std::to_string(n + 1) + " exceeds the range " +
                    std::to_string(kFultonRange) + " where that implies anti-ampleness";
  } else {
    report.verdict = WitnessVerdict::Verified;
  }
  report.klt_note = in_unit_interval && d.verdict != ChsVerdict::Fails;
  return report;
}

SearchResult search_witness(int n, std::span<const Bound> bounds, const PositivityOptions& options) {
  SearchResult out;
  out.constraints = generate_constraints(n, true);
  const auto forms = forms_of(out.constraints);
  out.feasibility = solve_feasibility(forms, bounds);
  if (out.feasibility.feasible()) {
    BoundaryCombo combo{n, {}};
    for (int s = 2; s <= n; ++s) {
      auto it = out.feasibility.point.find(s);
      combo.a[s] = it == out.feasibility.point.end() ? Rational(0) : it->second;
    }
    out.witness = verify_witness(combo, options);
  }
  return out;
}

std::vector<Bound> unit_box(int n) {
  std::vector<Bound> out;
  for (int s = 2; s <= n; ++s) {
    out.push_back(Bound{s, BoundKind::AtLeast, Rational(0)});
    out.push_back(Bound{s, BoundKind::AtMost, Rational(1)});
  }
  return out;
}

const char* to_string(WitnessVerdict v) {
  switch (v) {
    case WitnessVerdict::Verified: return "verified";
    case WitnessVerdict::Refuted: return "refuted";
    case WitnessVerdict::Undecided: return "undecided";
  }
  return "?";
}

}  // namespace fcone
