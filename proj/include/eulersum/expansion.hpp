#pragma once

#include <map>
#include <vector>

#include "eulersum/index.hpp"
#include "eulersum/lincomb.hpp"

namespace eulersum {

/// Q-combination of multiple harmonic sums zeta_n(k_1,...,k_p), keyed by
/// the signed argument list (negative = factor (-1)^{n_j}). Key {} is 1.
using MhsComb = std::map<std::vector<int>, Rational>;

struct ExpansionOptions {
  /// Worker threads for the arrangement loop; 1 runs inline.
  unsigned jobs = 1;
};

/// prod_j H_n^{(i_j)} * prod_j Hbar_n^{(|i_j|)} as an n-independent MhsComb.
/// Negative entries of `inner` are alternating harmonic numbers
/// Hbar_n^{(i)} = sum_{k<=n} (-1)^{k-1}/k^i. Degree 0..10, else SizeError.
MhsComb expand_product_mhs(const std::vector<int>& inner, const ExpansionOptions& opts = {});

/// Sums over n >= 1 of (mhs term) * (outer factor)/n^{|q|}: every key
/// contributes zeta(q, K) and zeta(q (+) k_1, k_2, ...).
LinComb attach_outer(const MhsComb& mhs, int outer);

/// General expansion into (alternating) MZVs. Degree <= 10.
LinComb expand_theorem1(const EulerSumIndex& idx, const ExpansionOptions& opts = {});

/// Same result, literally summing over the whole symmetric group (degree <= 8).
LinComb expand_theorem1_by_permutations(const EulerSumIndex& idx);

/// Tail-sum expansion for non-alternating indices with every exponent >= 2.
bool theorem2_applicable(const EulerSumIndex& idx) noexcept;
LinComb expand_theorem2(const EulerSumIndex& idx);

/// S_{r^m, outer} through compositions of m only. r and outer may be barred.
/// 0 <= m <= 20.
LinComb expand_rm_theorem1(int r, int m, int outer);

/// S_{r^m, q} as a polynomial in zeta(r) times MZVs ending in q; r, q >= 2.
LinComb expand_rm_theorem2(int r, int m, int q);

}  // namespace eulersum
