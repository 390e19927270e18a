#include "fcone/kmaps.hpp"

#include <stdexcept>
#include <string>

namespace fcone {

namespace {

void check_label(int n, Label i) {
  if (i < 1 || i > n) {
    throw std::invalid_argument("label " + std::to_string(i) + " outside {1.." + std::to_string(n) + "}");
  }
}

void check_b_key(int n, const Subset& s) {
  if (s.ambient() != n) throw std::invalid_argument("B-key lives on a different label set");
  if (s.size() < 2) throw std::invalid_argument("B-key needs at least two labels: {" + to_string(s) + "}");
}

// All subsets of {1..n} with exactly s elements, via Gosper's hack.
template <typename Visit>
void for_each_subset_of_size(int n, int s, Visit&& visit) {
  if (s < 0 || s > n) return;
  if (s == 0) {
    visit(Subset(n, 0));
    return;
  }
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t mask = (std::uint64_t{1} << s) - 1;
  while (mask < limit) {
    visit(Subset(n, mask));
    const std::uint64_t c = mask & -mask;
    const std::uint64_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

}  // namespace

KDivisor::KDivisor(int n) : n_(n) {
  if (n < 1 || n > kMaxMarkedPoints) throw std::invalid_argument("n out of range: " + std::to_string(n));
}

Rational KDivisor::l_coeff(Label i) const {
  check_label(n_, i);
  auto it = l_.find(i);
  return it == l_.end() ? Rational(0) : it->second;
}

Rational KDivisor::b_coeff(const Subset& s) const {
  check_b_key(n_, s);
  auto it = b_.find(s);
  return it == b_.end() ? Rational(0) : it->second;
}

void KDivisor::add_l(Label i, const Rational& q) {
  check_label(n_, i);
  if (q == 0) return;
  auto [it, inserted] = l_.try_emplace(i, q);
  if (!inserted && (it->second += q) == 0) l_.erase(it);
}

void KDivisor::add_b(const Subset& s, const Rational& q) {
  check_b_key(n_, s);
  if (q == 0) return;
  auto [it, inserted] = b_.try_emplace(s, q);
  if (!inserted && (it->second += q) == 0) b_.erase(it);
}

KDivisor& KDivisor::operator+=(const KDivisor& other) {
  if (other.n_ != n_) throw std::invalid_argument("adding divisors on different spaces");
  for (const auto& [i, q] : other.l_) add_l(i, q);
  for (const auto& [s, q] : other.b_) add_b(s, q);
  return *this;
}

KDivisor& KDivisor::operator*=(const Rational& q) {
  if (q == 0) {
    l_.clear();
    b_.clear();
    return *this;
  }
  for (auto& [i, c] : l_) c *= q;
  for (auto& [s, c] : b_) c *= q;
  return *this;
}

KDivisor KDivisor::operator-() const {
  KDivisor out(*this);
  out *= Rational(-1);
  return out;
}

Rational BoundaryCombo::coefficient(int s) const {
  auto it = a.find(s);
  return it == a.end() ? Rational(0) : it->second;
}

KDivisor total_l(int n) {
  KDivisor h(n);
  for (Label i = 1; i <= n; ++i) h.add_l(i, Rational(1));
  return h;
}

KDivisor symmetric_boundary(int n, int s) {
  if (s < 2 || s > n) {
    throw std::invalid_argument("B[" + std::to_string(s) + "] needs 2 <= s <= n = " + std::to_string(n));
  }
  KDivisor h(n);
  for_each_subset_of_size(n, s, [&](const Subset& key) { h.add_b(key, Rational(1)); });
  return h;
}

KDivisor k_build(int n, const std::map<Label, Rational>& l, const BoundaryCombo& combo) {
  if (combo.n != n) throw std::invalid_argument("boundary combination built for a different n");
  KDivisor h(n);
  for (const auto& [i, q] : l) h.add_l(i, q);
  for (const auto& [s, q] : combo.a) {
    if (q == 0) {
      if (s < 2 || s > n) throw std::invalid_argument("a_" + std::to_string(s) + " outside 2..n");
      continue;
    }
    h += q * symmetric_boundary(n, s);
  }
  return h;
}

KDivisor k_build(int n, const std::map<Label, Rational>& l, const std::map<Subset, Rational, SubsetOrder>& b) {
  KDivisor h(n);
  for (const auto& [i, q] : l) h.add_l(i, q);
  for (const auto& [s, q] : b) h.add_b(s, q);
  return h;
}

KDivisor canonical_class(int n) {
  KDivisor k = Rational(-2) * total_l(n);
  for (int s = 3; s <= n; ++s) k += Rational(s - 2) * symmetric_boundary(n, s);
  return k;
}

KDivisor log_canonical(const BoundaryCombo& combo) {
  return canonical_class(combo.n) + k_build(combo.n, {}, combo);
}

MDivisor pullback_alpha(const KDivisor& h) {
  const int n = h.marked_points();
  if (n < 3) throw std::invalid_argument("alpha pullback needs n >= 3, got " + std::to_string(n));
  const int m = n + 1;
  MDivisor out(m);
  for (const auto& [s, q] : h.b_terms()) {
    const Subset lifted(m, s.mask());
    if (s.size() <= n - 1) {
      out.add(lifted, q);
    } else {
      out.add(Subset::singleton(m, m), q);
    }
  }
  return out;
}

Rational pullback_beta(const KDivisor& h, Label i) {
  const int n = h.marked_points();
  check_label(n, i);
  Rational degree = h.l_coeff(i);
  const Subset all = Subset::full(n);
  if (all.size() >= 2) degree -= h.b_coeff(all);
  const Subset others = Subset::singleton(n, i).complement();
  if (others.size() >= 2) degree -= h.b_coeff(others);
  return degree;
}

std::vector<BetaDegree> pullback_beta_all(const KDivisor& h) {
  std::vector<BetaDegree> out;
  for (Label i = 1; i <= h.marked_points(); ++i) out.push_back(BetaDegree{i, pullback_beta(h, i)});
  return out;
}

ChsDecision chs_ample(const KDivisor& h, AmpleSense sense, const PositivityOptions& options) {
  const KDivisor tested = sense == AmpleSense::Ample ? h : -h;
  ChsDecision out;
  out.sense = sense;
  out.alpha = f_positivity(pullback_alpha(tested), Sense::StrictlyPositive, options);
  out.beta = pullback_beta_all(tested);
  for (const auto& b : out.beta) {
    if (options.strict ? b.degree <= 0 : b.degree < 0) {
      out.failing_beta = b.i;
      break;
    }
  }
  if (out.failing_beta || out.alpha.verdict == Verdict::NotPositive) {
    out.verdict = ChsVerdict::Fails;
  } else if (out.alpha.verdict == Verdict::PositiveButUndecidedAmpleness) {
    out.verdict = ChsVerdict::Undecided;
  } else {
    out.verdict = ChsVerdict::Holds;
  }
  return out;
}

const char* to_string(ChsVerdict v) {
  switch (v) {
    case ChsVerdict::Holds: return "holds";
    case ChsVerdict::Fails: return "fails";
    case ChsVerdict::Undecided: return "undecided";
  }
  return "?";
}

}  // namespace fcone
