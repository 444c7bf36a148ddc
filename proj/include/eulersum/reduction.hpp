#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eulersum/identity_table.hpp"
#include "eulersum/index.hpp"
#include "eulersum/lincomb.hpp"

namespace eulersum {

/// W(k,l) = int_0^1 ln^k(t) ln^l(1-t) / (1-t) dt as a zeta polynomial.
/// Needs k >= 1, l >= 0, k + l <= 30.
LinComb w_integral(int k, int l);

/// zeta(k+1, {1}_l).
LinComb zeta_k1l(int k, int l);

/// Depth-two value of odd weight, any signs. nullopt for even weight.
std::optional<LinComb> rule_depth2_oddweight(const MzvAtom& atom);

/// zeta(a,b) + zeta(b,a) for signed a, b. nullopt when either ordering is
/// not admissible.
std::optional<LinComb> rule_reflection(int a, int b);

/// Sum of zeta over all six orderings of (a,b,c), repeats counted.
std::optional<LinComb> rule_reflection3(int a, int b, int c);

/// zeta({r}_m); a negative r gives the barred recurrence. Needs m >= 1 and
/// r != 1.
LinComb rule_repeated(int r, int m);
inline LinComb rule_repeated_bar(int r, int m) { return rule_repeated(-r, m); }

/// zeta(s bar) = (2^(1-s) - 1) zeta(s), s >= 2.
LinComb rule_alt_depth1(const MzvAtom& atom);

/// zeta(2a) zeta(2b) -> rational * zeta(2a+2b) inside every term.
LinComb collapse_even_zetas(const LinComb& x);

/// An identity whose right side still names Euler sums.
struct SumRelation {
  std::vector<std::pair<EulerSumIndex, Rational>> sums;
  LinComb rest;

  /// Expands every sum through theorem 1.
  LinComb resolve() const;
  std::string render() const;
};

/// zeta(k,i,j) + zeta(k,j,i) in terms of S_{ij,k}, S_{i,j+k}, S_{j,i+k},
/// S_{i+j,k}. Needs j >= i >= 1, k >= 2.
SumRelation rule_symmetric_triple(int i, int j, int k);

struct IdentityRule {
  std::string name;
  std::function<bool(const MzvAtom&)> matcher;
  std::function<LinComb(const MzvAtom&)> rewriter;
};

using Ruleset = std::vector<IdentityRule>;

/// azv, repeated-argument, zeta-k1l, depth2-odd-weight.
Ruleset default_ruleset();

struct ReductionOptions {
  bool pair_reflection = true;
  bool triple_reflection = true;
  bool even_zeta_collapse = true;
};

struct ReductionStep {
  std::string rule;
  std::string target;
};

struct ReductionResult {
  LinComb value;
  std::vector<ReductionStep> trace;
  bool trace_truncated = false;
  /// Atoms of depth >= 2 still present.
  std::vector<MzvAtom> unresolved;
};

/// Identities the library derives on its own, up to the given weight:
/// zeta(k+1,{1}_l), depth-two values of odd weight and zeta(s bar), each
/// fully reduced.
IdentityTable build_starter_table(int max_weight);

inline constexpr std::size_t kMaxTraceSteps = 10'000;

/// Tables first, then the rules in order, then the symmetric identities on
/// whole combinations, repeated until nothing changes.
ReductionResult reduce(const LinComb& input, const std::vector<IdentityTable>& tables = {},
                       const Ruleset& ruleset = default_ruleset(), const ReductionOptions& opts = {});

}  // namespace eulersum
