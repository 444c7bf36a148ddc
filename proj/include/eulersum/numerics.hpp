#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "eulersum/index.hpp"
#include "eulersum/lincomb.hpp"

namespace eulersum {

/// 50 decimal digits (166-bit mantissa).
using Real = boost::multiprecision::cpp_bin_float_50;

struct NumericResult {
  Real value = 0;
  /// |value - exact| <= tail_bound, truncation and rounding included.
  Real tail_bound = 0;
  /// Number of directly summed terms (largest N used).
  long terms_used = 0;
};

/// zeta_n(args) with signed arguments, exact. n <= 60, depth <= 6.
Rational eval_mhs_exact(const std::vector<int>& args, long n);

/// zeta_j(args) for every j = 0..n_max in one pass. Same limits.
std::vector<Rational> eval_mhs_exact_prefix(const std::vector<int>& args, long n_max);

struct EvalOptions {
  /// Forces the direct-summation cut-off instead of the adaptive ladder.
  long fixed_terms = 0;
};

/// Largest cut-off tried by the adaptive ladder.
inline constexpr long kMaxTerms = 10'000'000;

/// Certified value of one atom; target_tol >= 1e-12.
NumericResult eval_atom(const MzvAtom& atom, double target_tol, const EvalOptions& opts = {});

/// Products and sums with rigorous propagation of the atom bounds.
NumericResult eval_term(const SymbolicTerm& term, double target_tol);
NumericResult eval_lincomb(const LinComb& x, double target_tol);

/// Direct evaluation of the defining series; target_tol >= 1e-10.
NumericResult eval_euler_sum(const EulerSumIndex& idx, double target_tol,
                             const EvalOptions& opts = {});

/// Caches atom values across calls. Safe to share between threads.
class Evaluator {
 public:
  NumericResult atom(const MzvAtom& atom, double target_tol);
  NumericResult term(const SymbolicTerm& term, double target_tol);
  NumericResult lincomb(const LinComb& x, double target_tol);

 private:
  std::mutex mutex_;
  std::map<MzvAtom, NumericResult> cache_;
};

/// Fixed-point decimal string with the given number of significant digits.
std::string format_real(const Real& x, int digits = 30);

/// Li_q(1/2) and atoms to ~100 digits, for exporting reference values.
std::string eval_atom_digits100(const MzvAtom& atom);

}  // namespace eulersum
