#pragma once

#include <map>
#include <optional>
#include <vector>

#include "fcone/combinat.hpp"
#include "fcone/mcurves.hpp"
#include "fcone/rational.hpp"

namespace fcone {

/// Divisor class on the space of n-pointed degree-one stable maps to P^1,
/// written as sum l_i L_i + sum b_S B_S.
///
/// B-keys are raw subsets with 2 <= |S| <= n. B_S and B_{S^c} are different
/// divisors (the S side is the contracted component), so no complement
/// identification happens here.
class KDivisor {
 public:
  using LTerms = std::map<Label, Rational>;
  using BTerms = std::map<Subset, Rational, SubsetOrder>;

  explicit KDivisor(int n);

  int marked_points() const { return n_; }

  Rational l_coeff(Label i) const;
  Rational b_coeff(const Subset& s) const;

  void add_l(Label i, const Rational& q);
  void add_b(const Subset& s, const Rational& q);

  const LTerms& l_terms() const { return l_; }
  const BTerms& b_terms() const { return b_; }
  bool is_zero() const { return l_.empty() && b_.empty(); }

  KDivisor& operator+=(const KDivisor& other);
  KDivisor& operator*=(const Rational& q);
  friend KDivisor operator+(KDivisor a, const KDivisor& b) { return a += b; }
  friend KDivisor operator*(const Rational& q, KDivisor a) { return a *= q; }
  KDivisor operator-() const;
  friend KDivisor operator-(const KDivisor& a, const KDivisor& b) { return a + (-b); }

  bool operator==(const KDivisor& other) const = default;

 private:
  int n_;
  LTerms l_;
  BTerms b_;
};

/// Coefficients a_s of D = sum_s a_s B[s], where B[s] sums B_S over |S| = s.
struct BoundaryCombo {
  int n = 0;
  std::map<int, Rational> a;

  Rational coefficient(int s) const;
};

/// L = L_1 + ... + L_n.
KDivisor total_l(int n);
/// B[s].
KDivisor symmetric_boundary(int n, int s);

/// Expands l-coefficients and a symmetric boundary combination into explicit keys.
KDivisor k_build(int n, const std::map<Label, Rational>& l, const BoundaryCombo& combo);
KDivisor k_build(int n, const std::map<Label, Rational>& l, const std::map<Subset, Rational, SubsetOrder>& b);

/// K_n = -2L + sum_{s=3}^{n} (s-2) B[s].
KDivisor canonical_class(int n);

/// K_n + sum a_s B[s].
KDivisor log_canonical(const BoundaryCombo& combo);

/// Pullback along alpha to the (n+1)-pointed curve space:
///   B_S -> Delta_S        for |S| <= n-1,
///   B_{1..n} -> -psi_{n+1} (singleton key {n+1}, coefficient +1),
///   L_i -> 0.
MDivisor pullback_alpha(const KDivisor& h);

/// Degree of beta_i^* H on P^1: l_i - b_{1..n} - b_{{i}^c}.
Rational pullback_beta(const KDivisor& h, Label i);

struct BetaDegree {
  Label i = 0;
  Rational degree;
  bool operator==(const BetaDegree&) const = default;
};

std::vector<BetaDegree> pullback_beta_all(const KDivisor& h);

enum class AmpleSense { Ample, AntiAmple };
enum class ChsVerdict { Holds, Fails, Undecided };

/// Outcome of the pullback ampleness test. Anti-ampleness of H is run as
/// ampleness of -H, and every recorded value (F-values, beta degrees) is that
/// of the divisor actually tested, so chs_ample(H, Ample) and
/// chs_ample(-H, AntiAmple) carry identical certificates.
struct ChsDecision {
  ChsVerdict verdict = ChsVerdict::Fails;
  AmpleSense sense = AmpleSense::Ample;
  AmpDecision alpha;
  std::vector<BetaDegree> beta;
  /// First label whose beta degree is not positive.
  std::optional<Label> failing_beta;
};

ChsDecision chs_ample(const KDivisor& h, AmpleSense sense, const PositivityOptions& options = {});

const char* to_string(ChsVerdict v);

}  // namespace fcone
