#include "fcone/mcurves.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "fcone/parallel.hpp"

namespace fcone {

unsigned default_thread_count() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FCONE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

unsigned resolve_thread_count(unsigned requested, std::size_t work_items) {
  constexpr std::size_t kItemsPerThread = 4096;
  unsigned n = requested == 0 ? default_thread_count() : requested;
  const std::size_t useful = std::max<std::size_t>(1, work_items / kItemsPerThread);
  return static_cast<unsigned>(std::min<std::size_t>(n, useful));
}

namespace {

void check_m(int m) {
  if (m < 3) throw std::invalid_argument("MDivisor needs at least 3 marked points, got " + std::to_string(m));
}

// Runs body(begin, end, chunk) over [0, count) split into contiguous chunks.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
  if (threads <= 1) {
    body(std::size_t{0}, count, 0U);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t step = (count + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(count, t * step);
    const std::size_t end = std::min(count, begin + step);
    pool.emplace_back([&body, begin, end, t] { body(begin, end, t); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

Subset m_key(const Subset& s) {
  check_m(s.ambient());
  return canonical_key(s, KeyMode::ComplementIdentified);
}

MDivisor::MDivisor(int m) : m_(m) { check_m(m); }

MDivisor MDivisor::psi(int m, Label i) {
  MDivisor h(m);
  h.set(Subset::singleton(m, i), Rational(-1));
  return h;
}

MDivisor MDivisor::delta(const Subset& s) {
  MDivisor h(s.ambient());
  const int k = s.size();
  if (k < 2 || k > s.ambient() - 2) {
    throw std::invalid_argument("boundary divisor Delta_S needs 2 <= |S| <= m-2: {" + to_string(s) + "}");
  }
  h.set(s, Rational(1));
  return h;
}

Rational MDivisor::coefficient(const Subset& s) const {
  if (s.ambient() != m_) throw std::invalid_argument("subset and divisor live on different label sets");
  auto it = terms_.find(m_key(s));
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MDivisor::psi_coefficient(Label i) const {
  return -coefficient(Subset::singleton(m_, i));
}

void MDivisor::add(const Subset& s, const Rational& q) {
  if (s.ambient() != m_) throw std::invalid_argument("subset and divisor live on different label sets");
  if (q == 0) return;
  const Subset key = m_key(s);
  auto [it, inserted] = terms_.try_emplace(key, q);
  if (!inserted) {
    it->second += q;
    if (it->second == 0) terms_.erase(it);
  }
}

void MDivisor::set(const Subset& s, const Rational& q) {
  if (s.ambient() != m_) throw std::invalid_argument("subset and divisor live on different label sets");
  const Subset key = m_key(s);
  if (q == 0) {
    terms_.erase(key);
  } else {
    terms_[key] = q;
  }
}

MDivisor& MDivisor::operator+=(const MDivisor& other) {
  if (other.m_ != m_) throw std::invalid_argument("adding divisors on different spaces");
  for (const auto& [key, q] : other.terms_) add(key, q);
  return *this;
}

MDivisor& MDivisor::operator-=(const MDivisor& other) {
  if (other.m_ != m_) throw std::invalid_argument("subtracting divisors on different spaces");
  for (const auto& [key, q] : other.terms_) add(key, -q);
  return *this;
}

MDivisor& MDivisor::operator*=(const Rational& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= q;
  return *this;
}

MDivisor MDivisor::operator-() const {
  MDivisor out(*this);
  for (auto& [key, c] : out.terms_) c = -c;
  return out;
}

bool MDivisor::operator==(const MDivisor& other) const {
  return m_ == other.m_ && terms_ == other.terms_;
}

MDivisor m_linear_combine(std::span<const std::pair<Rational, MDivisor>> terms) {
  if (terms.empty()) throw std::invalid_argument("empty linear combination has no ambient space");
  MDivisor out(terms.front().second.marked_points());
  for (const auto& [q, h] : terms) {
    if (h.marked_points() != out.marked_points()) {
      throw std::invalid_argument("linear combination mixes m=" + std::to_string(out.marked_points()) +
                                  " and m=" + std::to_string(h.marked_points()));
    }
    for (const auto& [key, c] : h.terms()) out.add(key, q * c);
  }
  return out;
}

Rational f_curve_value(const MDivisor& h, const FourPartition& p) {
  if (p.ambient() != h.marked_points()) {
    throw std::invalid_argument("partition of " + std::to_string(p.ambient()) + " labels against divisor on m=" +
                                std::to_string(h.marked_points()));
  }
  const auto& [i, j, k, l] = p.parts;
  Rational v = h.coefficient(i.united(j)) + h.coefficient(i.united(k)) + h.coefficient(i.united(l));
  v -= h.coefficient(i);
  v -= h.coefficient(j);
  v -= h.coefficient(k);
  v -= h.coefficient(l);
  return v;
}

std::vector<FValue> f_curve_values(const MDivisor& h, unsigned threads) {
  const auto partitions = enumerate_four_partitions(h.marked_points());
  std::vector<FValue> out(partitions.size());
  parallel_chunks(partitions.size(), resolve_thread_count(threads, partitions.size()),
                  [&](std::size_t begin, std::size_t end, unsigned) {
                    for (std::size_t idx = begin; idx < end; ++idx) {
                      out[idx] = FValue{partitions[idx], f_curve_value(h, partitions[idx])};
                    }
                  });
  return out;
}

AmpDecision f_positivity(const MDivisor& h, Sense sense, const PositivityOptions& options) {
  const int m = h.marked_points();
  if (m < 4) throw std::invalid_argument("F-curves need at least 4 marked points, got " + std::to_string(m));

  const auto partitions = enumerate_four_partitions(m);
  const unsigned threads = resolve_thread_count(options.threads, partitions.size());

  auto satisfies = [&](const Rational& v) {
    const int s = sgn(v);
    if (sense == Sense::StrictlyPositive) return options.strict ? s > 0 : s >= 0;
    return options.strict ? s < 0 : s <= 0;
  };

  struct Partial {
    std::size_t first_violation = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> violations;
    std::optional<Rational> lo, hi;
  };
  std::vector<Partial> partials(threads);
  std::vector<Rational> values(partitions.size());

  parallel_chunks(partitions.size(), threads, [&](std::size_t begin, std::size_t end, unsigned t) {
    Partial& part = partials[t];
    for (std::size_t idx = begin; idx < end; ++idx) {
      Rational v = f_curve_value(h, partitions[idx]);
      if (!part.lo || v < *part.lo) part.lo = v;
      if (!part.hi || v > *part.hi) part.hi = v;
      if (!satisfies(v)) {
        part.first_violation = std::min(part.first_violation, idx);
        if (options.all_violations) part.violations.push_back(idx);
      }
      values[idx] = std::move(v);
    }
  });

  // Deterministic reduce: chunks are contiguous and in order.
  AmpDecision out;
  out.sense = sense;
  out.strict = options.strict;
  out.curves_checked = partitions.size();
  std::size_t first = std::numeric_limits<std::size_t>::max();
  bool have_range = false;
  for (const Partial& part : partials) {
    first = std::min(first, part.first_violation);
    for (std::size_t idx : part.violations) out.violations.push_back(FValue{partitions[idx], values[idx]});
    if (part.lo) {
      if (!have_range || *part.lo < out.min_value) out.min_value = *part.lo;
      if (!have_range || *part.hi > out.max_value) out.max_value = *part.hi;
      have_range = true;
    }
  }

  if (first != std::numeric_limits<std::size_t>::max()) {
    out.verdict = Verdict::NotPositive;
    out.witness = FValue{partitions[first], values[first]};
  } else {
    out.verdict = m <= kFultonRange ? Verdict::Positive : Verdict::PositiveButUndecidedAmpleness;
  }
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive: return "positive";
    case Verdict::NotPositive: return "not-positive";
    case Verdict::PositiveButUndecidedAmpleness: return "positive-undecided";
  }
  return "?";
}

}  // namespace fcone
