#include "eulersum/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "eulersum/errors.hpp"
#include "numerics_engine.hpp"

namespace eulersum {

namespace {

constexpr long kMaxExactN = 60;
constexpr std::size_t kMaxExactDepth = 6;
constexpr long kFirstCutoff = 64;

void check_exact_limits(const std::vector<int>& args, long n) {
  if (n < 0 || n > kMaxExactN) throw SizeError("exact MHS evaluation needs 0 <= n <= 60");
  if (args.size() > kMaxExactDepth) throw SizeError("exact MHS evaluation needs depth <= 6");
  for (int a : args)
    if (a == 0) throw PreconditionError("zero MHS argument");
}

Rational inv_power(long n, int s) {
  BigInt d = 1;
  for (int i = 0; i < s; ++i) d *= n;
  return Rational(BigInt(1), d);
}

detail::Evaluated<Real> atom_at(const MzvAtom& atom, long N) {
  if (atom.is_polylog()) return detail::polylog_half<Real>(atom.args()[0], N);
  return detail::mzv<Real>(atom.args(), N);
}

NumericResult atom_adaptive(const MzvAtom& atom, const Real& tol, const EvalOptions& opts) {
  if (opts.fixed_terms > 0) {
    long N = std::max(8L, opts.fixed_terms);
    auto e = atom_at(atom, N);
    return {e.value, e.bound, N};
  }
  Real best_bound = -1;
  for (long N = kFirstCutoff; N <= kMaxTerms; N *= 2) {
    auto e = atom_at(atom, N);
    if (e.bound <= tol) return {e.value, e.bound, N};
    best_bound = e.bound;
  }
  throw CapacityError("tolerance not reached for " + render_plain(atom),
                      static_cast<double>(best_bound));
}

Real atom_tolerance(double tol) { return std::min(Real(tol) / 1000, Real(1e-30)); }

void check_tol(double tol, double floor, const char* what) {
  if (!(tol >= floor)) throw PreconditionError(std::string(what) + ": target tolerance below the supported floor");
}

NumericResult combine_term(const std::vector<NumericResult>& factors) {
  NumericResult out;
  Real value = 1, inflated = 1, plain = 1;
  long used = 0;
  for (const auto& f : factors) {
    value *= f.value;
    inflated *= abs(f.value) + f.tail_bound;
    plain *= abs(f.value);
    used = std::max(used, f.terms_used);
  }
  out.value = value;
  // |prod x_i - prod y_i| <= prod(|y_i| + e_i) - prod |y_i|, plus rounding.
  out.tail_bound = (inflated - plain) + std::numeric_limits<Real>::epsilon() *
                                            Real(4 * factors.size() + 4) * inflated;
  out.terms_used = used;
  return out;
}

template <class AtomFn>
NumericResult lincomb_with(const LinComb& x, double tol, AtomFn&& atom_fn) {
  NumericResult out;
  Real scale = 0;
  for (const auto& [t, c] : x) {
    std::vector<NumericResult> factors;
    for (const auto& a : t.factors()) factors.push_back(atom_fn(a));
    NumericResult r = combine_term(factors);
    Real cr = detail::to_real<Real>(c);
    out.value += cr * r.value;
    out.tail_bound += abs(cr) * r.tail_bound;
    scale += abs(cr * r.value);
    out.terms_used = std::max(out.terms_used, r.terms_used);
  }
  out.tail_bound += std::numeric_limits<Real>::epsilon() * Real(4 * x.size() + 4) * scale;
  if (out.tail_bound > tol)
    throw CapacityError("combined error bound exceeds the requested tolerance",
                        static_cast<double>(out.tail_bound));
  return out;
}

}  // namespace

Rational eval_mhs_exact(const std::vector<int>& args, long n) {
  check_exact_limits(args, n);
  return eval_mhs_exact_prefix(args, n).back();
}

std::vector<Rational> eval_mhs_exact_prefix(const std::vector<int>& args, long n_max) {
  check_exact_limits(args, n_max);
  const std::size_t k = args.size();
  // Q[j] = zeta_n(s_j..s_k); ascending j reads Q[j+1] before it advances to n.
  std::vector<Rational> Q(k + 1, Rational(0));
  Q[k] = 1;
  std::vector<Rational> out{Q[0]};
  for (long n = 1; n <= n_max; ++n) {
    for (std::size_t j = 0; j < k; ++j) {
      Rational t = inv_power(n, std::abs(args[j]));
      if (args[j] < 0 && n % 2) t = -t;
      Q[j] += t * Q[j + 1];
    }
    out.push_back(Q[0]);
  }
  return out;
}

NumericResult eval_atom(const MzvAtom& atom, double target_tol, const EvalOptions& opts) {
  check_tol(target_tol, 1e-12, "eval_atom");
  return atom_adaptive(atom, Real(target_tol), opts);
}

NumericResult eval_term(const SymbolicTerm& term, double target_tol) {
  return eval_lincomb(LinComb::of(term), target_tol);
}

NumericResult eval_lincomb(const LinComb& x, double target_tol) {
  Evaluator ev;
  return ev.lincomb(x, target_tol);
}

NumericResult Evaluator::atom(const MzvAtom& a, double target_tol) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(a);
    if (it != cache_.end() && it->second.tail_bound <= target_tol) return it->second;
  }
  NumericResult r = atom_adaptive(a, atom_tolerance(target_tol), {});
  std::lock_guard<std::mutex> lock(mutex_);
  cache_[a] = r;
  return r;
}

NumericResult Evaluator::term(const SymbolicTerm& t, double target_tol) {
  return lincomb(LinComb::of(t), target_tol);
}

NumericResult Evaluator::lincomb(const LinComb& x, double target_tol) {
  check_tol(target_tol, 1e-12, "eval_lincomb");
  return lincomb_with(x, target_tol, [&](const MzvAtom& a) { return atom(a, target_tol); });
}

NumericResult eval_euler_sum(const EulerSumIndex& idx, double target_tol, const EvalOptions& opts) {
  validate_index(idx);
  check_tol(target_tol, 1e-10, "eval_euler_sum");
  if (opts.fixed_terms > 0) {
    long N = std::max(16L, opts.fixed_terms);
    auto e = detail::euler_sum<Real>(idx.inner, idx.outer, N);
    return {e.value, e.bound, N};
  }
  Real best = -1;
  for (long N = detail::euler_sum_start(idx.inner, idx.outer); N <= kMaxTerms; N *= 2) {
    auto e = detail::euler_sum<Real>(idx.inner, idx.outer, N);
    if (e.bound <= Real(target_tol)) return {e.value, e.bound, N};
    best = e.bound;
  }
  throw CapacityError("tolerance not reached for " + render_index(idx, RenderStyle::Plain),
                      static_cast<double>(best));
}

std::string format_real(const Real& x, int digits) {
  return x.str(digits, std::ios_base::fmtflags(0));
}

std::string eval_atom_digits100(const MzvAtom& atom) {
  using R110 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<110>>;
  detail::Evaluated<R110> e;
  if (atom.is_polylog()) e = detail::polylog_half<R110>(atom.args()[0], 400);
  else e = detail::mzv<R110>(atom.args(), 256);
  if (e.bound > R110("1e-100")) throw CapacityError("100-digit evaluation failed", static_cast<double>(e.bound));
  return e.value.str(100, std::ios_base::fmtflags(0));
}

}  // namespace eulersum
