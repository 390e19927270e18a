#include "fcone/feasibility.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace fcone {

void LinearForm::normalize_zeros() {
  std::erase_if(coefficients, [](const auto& kv) { return kv.second == 0; });
}

Rational LinearForm::evaluate(const Point& point) const {
  Rational v = constant;
  for (const auto& [var, q] : coefficients) {
    auto it = point.find(var);
    if (it != point.end()) v += q * it->second;
  }
  return v;
}

bool LinearForm::satisfied_by(const Point& point) const {
  const int s = sgn(evaluate(point));
  return strict() ? s < 0 : s <= 0;
}

bool LinearForm::operator<(const LinearForm& other) const {
  if (relation != other.relation) return relation < other.relation;
  if (constant != other.constant) return constant < other.constant;
  return coefficients < other.coefficients;
}

std::string to_string(const LinearForm& form, const std::string& variable_prefix) {
  std::string out;
  auto append = [&](const Rational& q, const std::string& name) {
    if (q == 0) return;
    const bool negative = q < 0;
    const Rational mag = negative ? Rational(-q) : q;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (name.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag);
      out += name;
    }
  };
  for (const auto& [var, q] : form.coefficients) append(q, variable_prefix + std::to_string(var));
  append(form.constant, "");
  if (out.empty()) out = "0";
  out += form.strict() ? " < 0" : " <= 0";
  return out;
}

LinearForm to_form(const Bound& bound) {
  LinearForm f;
  f.relation = Relation::NonPositive;
  if (bound.kind == BoundKind::AtLeast) {
    f.constant = bound.value;
    f.coefficients[bound.variable] = Rational(-1);
  } else {
    f.constant = -bound.value;
    f.coefficients[bound.variable] = Rational(1);
  }
  return f;
}

namespace {

struct Row {
  std::vector<Rational> coeffs;  // per variable slot
  Rational constant;
  bool strict = false;
  std::vector<Rational> history;  // multiplier per original form
};

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

void scale_row(Row& row, const Rational& factor) {
  for (auto& q : row.coeffs) q *= factor;
  row.constant *= factor;
  for (auto& q : row.history) q *= factor;
}

// Positive rescaling so that parallel rows compare equal.
void normalize(Row& row) {
  for (const auto& q : row.coeffs) {
    if (q != 0) {
      scale_row(row, Rational(1) / abs(q));
      return;
    }
  }
  if (row.constant != 0) scale_row(row, Rational(1) / abs(row.constant));
}

bool contradictory(const Row& row) {
  return all_zero(row.coeffs) && (row.constant > 0 || (row.constant == 0 && row.strict));
}

// Keeps one row per coefficient direction: the one with the largest constant,
// strict winning ties. Constant-only rows are dropped (contradictions are
// caught before this is called).
std::vector<Row> prune(std::vector<Row> rows) {
  std::map<std::vector<Rational>, std::size_t> best;
  std::vector<Row> out;
  for (auto& row : rows) {
    if (all_zero(row.coeffs)) continue;
    auto [it, inserted] = best.try_emplace(row.coeffs, out.size());
    if (inserted) {
      out.push_back(std::move(row));
      continue;
    }
    Row& kept = out[it->second];
    if (row.constant > kept.constant || (row.constant == kept.constant && row.strict && !kept.strict)) {
      kept = std::move(row);
    }
  }
  return out;
}

struct Interval {
  std::optional<Rational> lo, hi;
  bool lo_strict = false, hi_strict = false;

  bool contains(const Rational& x) const {
    if (lo && (lo_strict ? x <= *lo : x < *lo)) return false;
    if (hi && (hi_strict ? x >= *hi : x > *hi)) return false;
    return true;
  }
};

// Value of smallest denominator (then smallest magnitude) in a nonempty interval.
Rational pick_value(const Interval& iv) {
  if (iv.contains(Rational(0))) return Rational(0);
  for (long q = 1; q <= 4096; ++q) {
    const Rational den(q);
    std::optional<Rational> plo, phi;
    if (iv.lo) plo = iv.lo_strict ? Rational(floor(*iv.lo * den) + 1) : ceil(*iv.lo * den);
    if (iv.hi) phi = iv.hi_strict ? Rational(ceil(*iv.hi * den) - 1) : floor(*iv.hi * den);
    // Zero is excluded, so the interval lies entirely on one side of it.
    const bool positive_side = iv.lo && *iv.lo >= 0;
    Rational p;
    if (positive_side) {
      if (!plo) continue;
      p = *plo;
      if (phi && p > *phi) continue;
    } else {
      if (!phi) continue;
      p = *phi;
      if (plo && p < *plo) continue;
    }
    Rational x = p / den;
    if (iv.contains(x)) return x;
  }
  if (iv.lo && iv.hi) return (*iv.lo + *iv.hi) / 2;
  throw std::logic_error("no value found in interval");
}

constexpr std::size_t kRowLimit = 2'000'000;

}  // namespace

FeasibilityResult solve_feasibility(std::span<const LinearForm> forms, std::span<const Bound> bounds) {
  FeasibilityResult result;
  result.system.assign(forms.begin(), forms.end());
  for (const auto& b : bounds) result.system.push_back(to_form(b));
  for (auto& f : result.system) f.normalize_zeros();

  std::set<int> var_set;
  for (const auto& f : result.system) {
    for (const auto& [v, q] : f.coefficients) var_set.insert(v);
  }
  for (const auto& b : bounds) var_set.insert(b.variable);
  const std::vector<int> vars(var_set.begin(), var_set.end());
  const std::size_t nv = vars.size();
  const std::size_t nf = result.system.size();

  auto infeasible = [&](const Row& row) {
    result.status = FeasibilityStatus::Infeasible;
    for (std::size_t i = 0; i < nf; ++i) {
      if (row.history[i] != 0) result.certificate.push_back(Multiplier{i, row.history[i]});
    }
    return result;
  };

  std::vector<Row> rows;
  for (std::size_t i = 0; i < nf; ++i) {
    const LinearForm& f = result.system[i];
    Row row{std::vector<Rational>(nv), f.constant, f.strict(), std::vector<Rational>(nf)};
    for (std::size_t k = 0; k < nv; ++k) {
      auto it = f.coefficients.find(vars[k]);
      if (it != f.coefficients.end()) row.coeffs[k] = it->second;
    }
    row.history[i] = Rational(1);
    if (contradictory(row)) return infeasible(row);
    normalize(row);
    rows.push_back(std::move(row));
  }
  rows = prune(std::move(rows));

  struct Stage {
    std::size_t var;
    std::vector<Row> rows;  // rows with a nonzero coefficient on var
  };
  std::vector<Stage> stages;
  std::vector<bool> eliminated(nv, false);

  for (std::size_t step = 0; step < nv; ++step) {
    // Cheapest variable first: fewest new rows, ties to the lowest index.
    std::size_t pick = nv;
    std::size_t best_cost = 0;
    for (std::size_t k = 0; k < nv; ++k) {
      if (eliminated[k]) continue;
      std::size_t pos = 0, neg = 0;
      for (const auto& r : rows) {
        if (r.coeffs[k] > 0) ++pos;
        else if (r.coeffs[k] < 0) ++neg;
      }
      const std::size_t cost = pos * neg;
      if (pick == nv || cost < best_cost) {
        pick = k;
        best_cost = cost;
      }
    }
    eliminated[pick] = true;

    std::vector<Row> pos, neg, next;
    for (auto& r : rows) {
      const int s = sgn(r.coeffs[pick]);
      if (s > 0) pos.push_back(std::move(r));
      else if (s < 0) neg.push_back(std::move(r));
      else next.push_back(std::move(r));
    }
    if (next.size() + pos.size() * neg.size() > kRowLimit) {
      throw std::runtime_error("Fourier-Motzkin elimination exceeded the row limit");
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Rational wp = -q.coeffs[pick];
        const Rational wq = p.coeffs[pick];
        Row r{std::vector<Rational>(nv), wp * p.constant + wq * q.constant, p.strict || q.strict,
              std::vector<Rational>(nf)};
        for (std::size_t k = 0; k < nv; ++k) r.coeffs[k] = wp * p.coeffs[k] + wq * q.coeffs[k];
        r.coeffs[pick] = 0;
        for (std::size_t i = 0; i < nf; ++i) r.history[i] = wp * p.history[i] + wq * q.history[i];
        if (contradictory(r)) return infeasible(r);
        normalize(r);
        next.push_back(std::move(r));
      }
    }
    std::vector<Row> involved = std::move(pos);
    std::move(neg.begin(), neg.end(), std::back_inserter(involved));
    stages.push_back(Stage{pick, std::move(involved)});
    rows = prune(std::move(next));
  }

  // Back-substitution in reverse elimination order.
  std::vector<Rational> value(nv);
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    Interval iv;
    for (const auto& r : it->rows) {
      Rational rest = r.constant;
      for (std::size_t k = 0; k < nv; ++k) {
        if (k != it->var) rest += r.coeffs[k] * value[k];
      }
      const Rational& g = r.coeffs[it->var];
      const Rational limit = -rest / g;
      if (g > 0) {
        if (!iv.hi || limit < *iv.hi || (limit == *iv.hi && r.strict)) {
          iv.hi = limit;
          iv.hi_strict = r.strict;
        }
      } else {
        if (!iv.lo || limit > *iv.lo || (limit == *iv.lo && r.strict)) {
          iv.lo = limit;
          iv.lo_strict = r.strict;
        }
      }
    }
    value[it->var] = pick_value(iv);
  }
  for (std::size_t k = 0; k < nv; ++k) result.point[vars[k]] = value[k];
  if (!check_point(result.system, result.point)) {
    throw std::logic_error("back-substituted point fails the system");
  }
  return result;
}

bool check_point(std::span<const LinearForm> system, const Point& point) {
  return std::all_of(system.begin(), system.end(), [&](const LinearForm& f) { return f.satisfied_by(point); });
}

bool check_certificate(std::span<const LinearForm> system, std::span<const Multiplier> certificate) {
  if (certificate.empty()) return false;
  std::map<int, Rational> combined;
  Rational constant;
  bool strict_used = false;
  for (const auto& [idx, lambda] : certificate) {
    if (idx >= system.size() || lambda < 0) return false;
    const LinearForm& f = system[idx];
    constant += lambda * f.constant;
    for (const auto& [v, q] : f.coefficients) combined[v] += lambda * q;
    strict_used = strict_used || (lambda > 0 && f.strict());
  }
  for (const auto& [v, q] : combined) {
    if (q != 0) return false;
  }
  return constant > 0 || (constant == 0 && strict_used);
}

bool check_result(const FeasibilityResult& result) {
  return result.feasible() ? check_point(result.system, result.point)
                           : check_certificate(result.system, result.certificate);
}

}  // namespace fcone
