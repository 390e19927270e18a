#pragma once

#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fcone/combinat.hpp"
#include "fcone/rational.hpp"

namespace fcone {

/// Divisor class on the moduli space of m-pointed stable rational curves,
/// written as H = sum c_S Delta_S over canonical keys.
///
/// Two kinds of key are stored:
///   - singletons {i}: the coefficient c_{i} of Delta_{i} := -psi_i, so a
///     stored value q means the class -q psi_i;
///   - complement-identified boundary keys S with 2 <= |S| <= m-2, where
///     Delta_S = Delta_{S^c}.
/// A subset of size m-1 is folded onto the singleton of its complement. Zero
/// coefficients are never stored.
class MDivisor {
 public:
  using Terms = std::map<Subset, Rational, SubsetOrder>;

  explicit MDivisor(int m);

  /// The class psi_i, i.e. coefficient -1 on the singleton key {i}.
  static MDivisor psi(int m, Label i);
  /// The class Delta_S (S may be given by either side).
  static MDivisor delta(const Subset& s);

  int marked_points() const { return m_; }

  /// c_S for any 1 <= |S| <= m-1, looked up through the canonical key.
  Rational coefficient(const Subset& s) const;
  /// Shorthand for the psi_i coefficient of the class (= -c_{i}).
  Rational psi_coefficient(Label i) const;

  void add(const Subset& s, const Rational& q);
  void set(const Subset& s, const Rational& q);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  MDivisor& operator+=(const MDivisor& other);
  MDivisor& operator-=(const MDivisor& other);
  MDivisor& operator*=(const Rational& q);
  friend MDivisor operator+(MDivisor a, const MDivisor& b) { return a += b; }
  friend MDivisor operator-(MDivisor a, const MDivisor& b) { return a -= b; }
  friend MDivisor operator*(const Rational& q, MDivisor a) { return a *= q; }
  MDivisor operator-() const;

  bool operator==(const MDivisor& other) const;

 private:
  int m_;
  Terms terms_;
};

/// Key under which c_S is stored (see MDivisor).
Subset m_key(const Subset& s);

MDivisor m_linear_combine(std::span<const std::pair<Rational, MDivisor>> terms);

/// c_{I+J} + c_{I+K} + c_{I+L} - c_I - c_J - c_K - c_L for the partition
/// I|J|K|L, with I its first block. This is the intersection number of H with
/// the F-curve of the partition.
Rational f_curve_value(const MDivisor& h, const FourPartition& p);

struct FValue {
  FourPartition partition;
  Rational value;
};

/// F-values on every 4-block partition, in enumeration order.
std::vector<FValue> f_curve_values(const MDivisor& h, unsigned threads = 0);

enum class Sense { StrictlyPositive, StrictlyNegative };

enum class Verdict {
  Positive,
  NotPositive,
  /// Every F-value has the tested sign but m exceeds the range where that is
  /// known to characterize (anti-)ampleness.
  PositiveButUndecidedAmpleness,
};

/// Largest m for which F-positivity is known to be equivalent to ampleness.
inline constexpr int kFultonRange = 7;

struct PositivityOptions {
  /// false tests >= 0 / <= 0 instead (nef-style experiments).
  bool strict = true;
  /// Collect every violating partition, not just the first one.
  bool all_violations = false;
  /// 0 = default_thread_count().
  unsigned threads = 0;
};

struct AmpDecision {
  Verdict verdict = Verdict::NotPositive;
  Sense sense = Sense::StrictlyPositive;
  bool strict = true;
  /// First violating partition in enumeration order.
  std::optional<FValue> witness;
  std::vector<FValue> violations;
  Rational min_value;
  Rational max_value;
  std::size_t curves_checked = 0;

  bool positive() const { return verdict != Verdict::NotPositive; }
  /// True only when the F-test is conclusive for (anti-)ampleness.
  bool decided_ample() const { return verdict == Verdict::Positive; }
};

AmpDecision f_positivity(const MDivisor& h, Sense sense, const PositivityOptions& options = {});

const char* to_string(Verdict v);

}  // namespace fcone
