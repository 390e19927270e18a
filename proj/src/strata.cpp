#include "fcone/strata.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fcone {

std::vector<Subset> b_key_space(int n) {
  if (n < 2) throw std::invalid_argument("no B-keys for n < 2");
  if (n > 30) throw std::invalid_argument("B-key space too large for n = " + std::to_string(n));
  std::vector<Subset> keys;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Subset s(n, mask);
    if (s.size() >= 2) keys.push_back(s);
  }
  std::sort(keys.begin(), keys.end(), SubsetOrder{});
  return keys;
}

DivisorCorrespondence phi_divisor_map(int n) {
  const auto keys = b_key_space(n);
  DivisorCorrespondence out;
  out.n = n;
  // Sources: boundary divisors of the (n+3)-pointed space whose S avoids the
  // three points n+1, n+2, n+3 sent to 0, 1, infinity.
  const int m = n + 3;
  std::set<std::uint64_t> sources;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const Subset source(m, mask);
    if (source.size() < 2) continue;
    if (!sources.insert(canonical_key(source, KeyMode::ComplementIdentified).mask()).second) {
      throw std::logic_error("two sources share a Delta key: {" + to_string(source) + "}");
    }
    out.pairs.push_back(DivisorPair{source, Subset(n, mask)});
  }
  std::sort(out.pairs.begin(), out.pairs.end(),
            [](const DivisorPair& a, const DivisorPair& b) { return SubsetOrder{}(a.target, b.target); });

  std::vector<Subset> targets;
  for (const auto& p : out.pairs) targets.push_back(p.target);
  if (targets != keys) throw std::logic_error("correspondence does not cover the B-key space exactly once");
  return out;
}

std::string to_tsv(const DivisorCorrespondence& c) {
  std::string out;
  for (const auto& p : c.pairs) {
    out += to_string(p.source) + '\t' + to_string(canonical_key(p.source, KeyMode::ComplementIdentified)) + '\t' +
           to_string(p.target) + '\n';
  }
  return out;
}

}  // namespace fcone
