#pragma once

#include <string>
#include <vector>

#include "fcone/combinat.hpp"

namespace fcone {

/// Divisor-level shadow of the birational map from the (n+3)-pointed curve
/// space to the space of n-pointed degree-one maps: the boundary divisor
/// Delta_S (S in {1..n}, viewed inside {1..n+3}) dominates B_S.
struct DivisorPair {
  Subset source;  ///< S inside {1..n+3}, as given (not canonicalized)
  Subset target;  ///< raw B-key inside {1..n}
};

struct DivisorCorrespondence {
  int n = 0;
  std::vector<DivisorPair> pairs;
};

/// Pairs (Delta_S, B_S) for every S with 2 <= |S| <= n, in B-key order. Throws
/// std::logic_error if the targets fail to cover the B-key space exactly once.
DivisorCorrespondence phi_divisor_map(int n);

/// Every B-key on the n-pointed map space, in SubsetOrder.
std::vector<Subset> b_key_space(int n);

/// Lines "S<TAB>DeltaKey<TAB>BKey", DeltaKey canonicalized in {1..n+3}.
std::string to_tsv(const DivisorCorrespondence& c);

}  // namespace fcone
