// Small hand-rolled generators for property tests. Fixed seeds keep runs
// reproducible.
#pragma once

#include <random>
#include <vector>

#include "eulersum/index.hpp"
#include "eulersum/lincomb.hpp"

namespace gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline eulersum::Rational rational(Rng& rng) {
  int num = uniform(rng, -40, 40);
  int den = uniform(rng, 1, 12);
  return eulersum::Rational(num, den);
}

inline eulersum::MzvAtom atom(Rng& rng, int max_depth = 3, int max_arg = 4) {
  if (uniform(rng, 0, 9) == 0) return eulersum::MzvAtom::polylog_half(uniform(rng, 1, 6));
  std::vector<int> args;
  int depth = uniform(rng, 1, max_depth);
  for (int i = 0; i < depth; ++i) {
    int a = uniform(rng, 1, max_arg);
    args.push_back(uniform(rng, 0, 2) == 0 ? -a : a);
  }
  if (args[0] == 1) args[0] = 2;
  return eulersum::MzvAtom::zeta(args);
}

inline eulersum::SymbolicTerm term(Rng& rng) {
  std::vector<eulersum::MzvAtom> f;
  int n = uniform(rng, 0, 3);
  for (int i = 0; i < n; ++i) f.push_back(atom(rng));
  return eulersum::SymbolicTerm(f);
}

inline eulersum::LinComb lincomb(Rng& rng, int max_terms = 5) {
  eulersum::LinComb x;
  int n = uniform(rng, 0, max_terms);
  for (int i = 0; i < n; ++i) x.add(term(rng), rational(rng));
  return x;
}

/// Convergent signed index with the given bounds on degree and |exponent|.
inline eulersum::EulerSumIndex index(Rng& rng, int max_degree, int max_exp, bool allow_bars = true) {
  std::vector<int> inner;
  int m = uniform(rng, 0, max_degree);
  for (int i = 0; i < m; ++i) {
    int e = uniform(rng, 1, max_exp);
    inner.push_back(allow_bars && uniform(rng, 0, 1) ? -e : e);
  }
  int q;
  do {
    q = uniform(rng, 1, max_exp);
    if (allow_bars && uniform(rng, 0, 1)) q = -q;
  } while (q == 1);
  return eulersum::make_index(inner, q);
}

}  // namespace gen
