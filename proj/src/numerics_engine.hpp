// Precision-generic numerical core shared by the public numerics API.
//
// Nested tails zeta_{>N}(s_1..s_i) and the tails of Euler sums are obtained
// from asymptotic expansions in 1/m: Euler-Maclaurin for plain sums and
// Euler-Boole for alternating ones. Every truncated expansion carries a
// bound on what was dropped, so a value comes back with an explicit error
// estimate.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "eulersum/rational.hpp"

namespace eulersum::detail {

template <class R>
R to_real(const Rational& q) {
  return R(numerator(q)) / R(denominator(q));
}

template <class R>
R unit_roundoff() {
  return std::numeric_limits<R>::epsilon();
}

template <class R>
struct Evaluated {
  R value = 0;
  R bound = 0;
};

/// B_{2j}/(2j)! for j = 0..n.
template <class R>
std::vector<R> bernoulli_over_factorial(int n) {
  std::vector<R> out;
  for (int j = 0; j <= n; ++j)
    out.push_back(to_real<R>(bernoulli(static_cast<unsigned>(2 * j)) /
                             Rational(factorial(static_cast<unsigned>(2 * j)))));
  return out;
}

/// Highest power of 1/m kept in a truncated expansion when summing from N.
template <class R>
int kept_powers(long N) {
  double digits = std::numeric_limits<R>::digits10 + 25.0;
  int a = static_cast<int>(std::ceil(digits / std::log10(static_cast<double>(N))));
  return std::clamp(a, 20, 240);
}

/// Powers N^{-k} for k = 0..kmax.
template <class R>
std::vector<R> inverse_powers(long N, int kmax) {
  std::vector<R> p(static_cast<std::size_t>(kmax) + 1);
  p[0] = 1;
  R inv = R(1) / R(N);
  for (int k = 1; k <= kmax; ++k) p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * inv;
  return p;
}

// ------------------------------------------------------------ MZV tails

/// F(m) ~ sum_eps eps^m sum_a c[eps][a] m^{-a}, with
/// |F(m) - expansion| <= rem * m^{-(A+1)} for all m >= N.
template <class R>
struct TailSeries {
  int A = 0;
  std::array<std::vector<R>, 2> c;  // [0]: eps = +1, [1]: eps = -1
  R rem = 0;

  explicit TailSeries(int a) : A(a) {
    c[0].assign(static_cast<std::size_t>(a) + 1, R(0));
    c[1].assign(static_cast<std::size_t>(a) + 1, R(0));
  }
};

template <class R>
class TailBuilder {
 public:
  explicit TailBuilder(long N)
      : N_(N),
        A_(kept_powers<R>(N)),
        bern_(bernoulli_over_factorial<R>(A_ + 4)),
        invN_(inverse_powers<R>(N, 3 * A_ + 8)) {}

  long cutoff() const { return N_; }

  /// G(m) = sum_{n>m} sigma^n n^{-s} F(n).
  TailSeries<R> step(const TailSeries<R>& F, int s, int sigma) const {
    TailSeries<R> G(A_);
    for (int eps = 0; eps < 2; ++eps)
      for (int a = 0; a <= A_; ++a) {
        const R& c = F.c[static_cast<std::size_t>(eps)][static_cast<std::size_t>(a)];
        if (c == 0) continue;
        int tau = eps ^ (sigma < 0 ? 1 : 0);
        add_power_tail(G, tau, a + s, c);
      }
    // Propagated remainder: sum_{n>m} n^{-s} rem n^{-(A+1)} <= rem m^{-(A+s)}/(A+s),
    // and m^{1-s} <= N^{1-s}.
    G.rem += F.rem / R(A_ + s) * inv_pow(s - 1);
    return G;
  }

  Evaluated<R> at_cutoff(const TailSeries<R>& F) const {
    Evaluated<R> out;
    R sign_minus = (N_ % 2) ? R(-1) : R(1);
    for (int a = 0; a <= A_; ++a) {
      out.value += F.c[0][static_cast<std::size_t>(a)] * invN_[static_cast<std::size_t>(a)];
      out.value += sign_minus * F.c[1][static_cast<std::size_t>(a)] * invN_[static_cast<std::size_t>(a)];
    }
    out.bound = F.rem * invN_[static_cast<std::size_t>(A_ + 1)];
    return out;
  }

  static TailSeries<R> unit(int A) {
    TailSeries<R> one(A);
    one.c[0][0] = 1;
    return one;
  }

  int powers() const { return A_; }

 private:
  // Adds c * sum_{n>m} tau^n n^{-b} to G.
  void add_power_tail(TailSeries<R>& G, int tau, int b, const R& c) const {
    if (tau == 0 && b < 2) throw std::logic_error("divergent tail (non-admissible argument)");
    const std::size_t comp = static_cast<std::size_t>(tau);
    auto put = [&](int power, const R& v) {
      if (power <= A_) G.c[comp][static_cast<std::size_t>(power)] += v;
      else G.rem += abs(v) * inv_pow(power - A_ - 1);
    };
    if (tau == 0) put(b - 1, c / R(b - 1));
    put(b, -c / 2);
    int J = std::max(1, (A_ - b + 2) / 2);
    R rising = b;  // (b)_{2j-1}
    R two_pow = 4;
    for (int j = 1; j <= J + 1; ++j) {
      R coef = bern_[static_cast<std::size_t>(j)] * rising;
      if (tau == 1) coef *= (two_pow - 1);
      int power = b + 2 * j - 1;
      if (j <= J) {
        put(power, c * coef);
      } else {
        // First omitted term; the Boole remainder gets a factor 2 of slack.
        R r = abs(c * coef) * (tau == 1 ? 2 : 1);
        G.rem += r * inv_pow(power - A_ - 1);
      }
      rising *= R(b + 2 * j - 1) * R(b + 2 * j);
      two_pow *= 4;
    }
  }

  // N^{-k}, tabulated for the common range.
  R inv_pow(int k) const {
    if (k < static_cast<int>(invN_.size())) return invN_[static_cast<std::size_t>(k)];
    return pow(R(N_), -k);
  }

  long N_;
  int A_;
  std::vector<R> bern_;
  std::vector<R> invN_;
};

/// zeta(args) = sum_{i=0}^{k} zeta_{>N}(s_1..s_i) * zeta_N(s_{i+1}..s_k).
template <class R>
Evaluated<R> mzv(const std::vector<int>& args, long N) {
  const std::size_t k = args.size();
  // Head sums: P[j] = zeta_N(s_j..s_k) through the nested recursion
  // P_j(n) = P_j(n-1) + sigma_j^n n^{-s_j} P_{j+1}(n-1).
  std::vector<R> P(k + 1, R(0)), Pabs(k + 1, R(0));
  P[k] = 1;
  Pabs[k] = 1;
  for (long n = 1; n <= N; ++n) {
    R rn = R(n);
    for (std::size_t j = 0; j < k; ++j) {
      int s = std::abs(args[j]);
      R t = pow(rn, -s);
      R signed_t = (args[j] < 0 && n % 2) ? R(-t) : t;
      P[j] += signed_t * P[j + 1];
      Pabs[j] += t * Pabs[j + 1];
    }
  }
  TailBuilder<R> tb(N);
  TailSeries<R> F = TailBuilder<R>::unit(tb.powers());
  Evaluated<R> out;
  out.value = P[0];
  R magnitude = Pabs[0];
  for (std::size_t i = 1; i <= k; ++i) {
    F = tb.step(F, std::abs(args[i - 1]), args[i - 1] < 0 ? -1 : 1);
    auto T = tb.at_cutoff(F);
    out.value += T.value * P[i];
    out.bound += T.bound * abs(P[i]);
    magnitude += abs(T.value) * Pabs[i];
  }
  R work = R(static_cast<double>(N) * static_cast<double>(k) * 4 + 50.0 * tb.powers() * static_cast<double>(k));
  out.bound += unit_roundoff<R>() * work * (magnitude + 1);
  return out;
}

/// Li_q(1/2) = sum 2^{-n} n^{-q}; tail after N below 2^{-N} (N+1)^{-q}.
template <class R>
Evaluated<R> polylog_half(int q, long N) {
  Evaluated<R> out;
  R half_pow = 1;
  for (long n = 1; n <= N; ++n) {
    half_pow /= 2;
    out.value += half_pow * pow(R(n), -q);
  }
  out.bound = half_pow * pow(R(N + 1), -q) + unit_roundoff<R>() * R(4 * N + 4);
  return out;
}

// ----------------------------------------------------------- Euler sums

/// sum_{eps,j,a} c eps^n n^{-a} ln^j n, dense in all three indices.
template <class R>
struct LogSeries {
  int amax = 0;
  int jmax = 0;
  std::vector<R> c;  // index (eps * (jmax+1) + j) * (amax+1) + a

  LogSeries(int a, int j) : amax(a), jmax(j), c(static_cast<std::size_t>(2 * (j + 1) * (a + 1)), R(0)) {}

  R& at(int eps, int j, int a) {
    return c[static_cast<std::size_t>((eps * (jmax + 1) + j) * (amax + 1) + a)];
  }
  const R& at(int eps, int j, int a) const {
    return c[static_cast<std::size_t>((eps * (jmax + 1) + j) * (amax + 1) + a)];
  }
};

template <class R>
LogSeries<R> multiply(const LogSeries<R>& x, const LogSeries<R>& y) {
  LogSeries<R> out(x.amax + y.amax, x.jmax + y.jmax);
  for (int e1 = 0; e1 < 2; ++e1)
    for (int j1 = 0; j1 <= x.jmax; ++j1)
      for (int a1 = 0; a1 <= x.amax; ++a1) {
        const R& c1 = x.at(e1, j1, a1);
        if (c1 == 0) continue;
        for (int e2 = 0; e2 < 2; ++e2)
          for (int j2 = 0; j2 <= y.jmax; ++j2)
            for (int a2 = 0; a2 <= y.amax; ++a2) {
              const R& c2 = y.at(e2, j2, a2);
              if (c2 == 0) continue;
              out.at(e1 ^ e2, j1 + j2, a1 + a2) += c1 * c2;
            }
      }
  return out;
}

/// Euler-Maclaurin / Euler-Boole evaluation of sum_{n>N} tau^n n^{-c} ln^j n.
template <class R>
class LogTailSummer {
 public:
  LogTailSummer(long N, int K) : N_(N), K_(K), L_(log(R(N))), bern_(bernoulli_over_factorial<R>(K + 1)) {}

  Evaluated<R> sum(int tau, int c, int j) const {
    if (tau == 0 && c < 2) throw std::logic_error("divergent Euler-sum tail");
    // f^{(k)}(x) = x^{-c-k} P_k(ln x), P_{k+1} = -(c+k) P_k + P_k'.
    std::vector<R> P(static_cast<std::size_t>(j) + 1, R(0));
    P[static_cast<std::size_t>(j)] = 1;
    auto eval_poly = [&](const std::vector<R>& poly) {
      R v = 0;
      for (std::size_t i = poly.size(); i-- > 0;) v = v * L_ + poly[i];
      return v;
    };
    auto derive = [&](std::vector<R>& poly, int k) {
      std::vector<R> next(poly.size(), R(0));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] -= R(c + k) * poly[i];
        if (i) next[i - 1] += R(static_cast<long>(i)) * poly[i];
      }
      poly.swap(next);
    };
    const R Nc = pow(R(N_), -c);
    R f0 = Nc * eval_poly(P);
    Evaluated<R> out;
    out.value = -f0 / 2;
    if (tau == 0) out.value += integral(c, j);
    R invN = R(1) / R(N_);
    R scale = Nc;  // N^{-c-k}
    R two_pow = 4;
    for (int k = 0; k <= 2 * K_ + 1; ++k) {
      derive(P, k);
      scale *= invN;
      int order = k + 1;
      if (order % 2 == 0) continue;
      int i = (order + 1) / 2;
      R coef = bern_[static_cast<std::size_t>(i)] * (tau == 1 ? R(two_pow - 1) : R(1));
      R term = coef * scale * eval_poly(P);
      two_pow *= 4;
      if (i <= K_) {
        out.value -= term;
      } else {
        R safety = R(tau == 1 ? 2 : 1) * R(j > 0 ? 10 : 1);
        out.bound += safety * abs(term);
      }
    }
    if (tau == 1 && N_ % 2) out.value = -out.value;
    return out;
  }

  /// int_N^inf x^{-c} ln^j x dx for c > 1.
  R integral(int c, int j) const {
    R Np = pow(R(N_), 1 - c);
    R I = Np / R(c - 1);
    R Lp = 1;
    for (int i = 1; i <= j; ++i) {
      Lp *= L_;
      I = Np * Lp / R(c - 1) + R(i) / R(c - 1) * I;
    }
    return I;
  }

  const R& log_cutoff() const { return L_; }

 private:
  long N_;
  int K_;
  R L_;
  std::vector<R> bern_;
};

/// Number of Bernoulli terms used for Euler-sum tails at cut-off N.
template <class R>
int euler_sum_order(long N) {
  double digits = std::numeric_limits<R>::digits10 - 18.0;
  return std::clamp(static_cast<int>(std::ceil(digits / std::log10(static_cast<double>(N)))), 6, 80);
}

/// Harmonic number H_n^{(i)} (i > 0) or Hbar_n^{(-i)} (i < 0) as an
/// expansion valid for n >= N, with a uniform error bound.
template <class R>
struct HarmonicExpansion {
  LogSeries<R> series{0, 0};
  R error = 0;
};

template <class R>
HarmonicExpansion<R> harmonic_expansion(int i, long N, int K, const R& direct_value) {
  const auto bern = bernoulli_over_factorial<R>(K + 1);
  const int b = std::abs(i);
  const bool log_term = i == 1;
  HarmonicExpansion<R> h;
  h.series = LogSeries<R>(b + 2 * K, log_term ? 1 : 0);
  const R RN = R(N);
  const R L = log(RN);
  // z(n) = -sum_{k>n} k^{-b} (plain) or sum_{k>n} (-1)^k k^{-b} (alternating),
  // except for i == 1 where it is H_n - ln n - gamma.
  R first_omitted = 0;
  R value_at_N = 0;
  const int comp = i < 0 ? 1 : 0;
  auto put = [&](int power, const R& v) {
    h.series.at(comp, 0, power) += v;
    value_at_N += v * pow(RN, -power) * ((comp == 1 && N % 2) ? -1 : 1);
  };
  R rising = b;
  R two_pow = 4;
  if (i == 1) {
    // H_n = ln n + gamma + 1/(2n) - sum_j B_{2j}/(2j) n^{-2j}
    put(1, R(1) / 2);
    for (int j = 1; j <= K + 1; ++j) {
      R v = -bern[static_cast<std::size_t>(j)] * to_real<R>(Rational(factorial(static_cast<unsigned>(2 * j - 1))));
      if (j <= K) put(2 * j, v);
      else first_omitted = abs(v) * pow(RN, -2 * j);
    }
    h.series.at(0, 1, 0) = 1;
    value_at_N += L;
  } else if (i > 0) {
    // H_n = C - sum_{k>n} k^{-b}
    put(b - 1, -R(1) / R(b - 1));
    put(b, R(1) / 2);
    for (int j = 1; j <= K + 1; ++j) {
      R v = -bern[static_cast<std::size_t>(j)] * rising;
      if (j <= K) put(b + 2 * j - 1, v);
      else first_omitted = abs(v) * pow(RN, -(b + 2 * j - 1));
      rising *= R(b + 2 * j - 1) * R(b + 2 * j);
    }
  } else {
    // Hbar_n = C' + sum_{k>n} (-1)^k k^{-b}
    put(b, -R(1) / 2);
    for (int j = 1; j <= K + 1; ++j) {
      R v = bern[static_cast<std::size_t>(j)] * rising * (two_pow - 1);
      if (j <= K) put(b + 2 * j - 1, v);
      else first_omitted = 2 * abs(v) * pow(RN, -(b + 2 * j - 1));
      rising *= R(b + 2 * j - 1) * R(b + 2 * j);
      two_pow *= 4;
    }
  }
  // Constant fixed by matching the directly summed value at N.
  h.series.at(0, 0, 0) += direct_value - value_at_N;
  // Error of the constant plus the truncation at any n >= N.
  h.error = 2 * first_omitted + unit_roundoff<R>() * R(4 * N + 100) * (abs(direct_value) + 1);
  return h;
}

/// S_{inner, outer} = sum_n prod H(n) * w(n) / n^{|outer|}, w = 1 or (-1)^{n-1}.
template <class R>
Evaluated<R> euler_sum(const std::vector<int>& inner, int outer, long N) {
  const int q = std::abs(outer);
  const bool barred = outer < 0;
  const int K = euler_sum_order<R>(N);
  const std::size_t m = inner.size();

  // Direct part with running harmonic accumulators.
  std::vector<R> H(m, R(0));
  R direct = 0, magnitude = 0;
  for (long n = 1; n <= N; ++n) {
    R rn = R(n);
    R prod = 1;
    for (std::size_t t = 0; t < m; ++t) {
      R term = pow(rn, -std::abs(inner[t]));
      H[t] += (inner[t] < 0 && n % 2 == 0) ? R(-term) : term;
      prod *= H[t];
    }
    R w = pow(rn, -q);
    if (barred && n % 2 == 0) w = -w;
    direct += prod * w;
    magnitude += abs(prod * w);
  }

  // Tail from the product of harmonic expansions.
  LogSeries<R> product(0, 0);
  product.at(0, 0, 0) = 1;
  std::vector<R> K_bounds, errors;
  for (std::size_t t = 0; t < m; ++t) {
    auto h = harmonic_expansion<R>(inner[t], N, K, H[t]);
    R Kt = 0;
    for (int e = 0; e < 2; ++e)
      for (int j = 0; j <= h.series.jmax; ++j)
        for (int a = 0; a <= h.series.amax; ++a) Kt += abs(h.series.at(e, j, a)) * pow(R(N), -a);
    K_bounds.push_back(Kt);
    errors.push_back(h.error);
    product = multiply(product, h.series);
  }

  LogTailSummer<R> summer(N, K);
  Evaluated<R> tail;
  const int outer_comp = barred ? 1 : 0;
  for (int e = 0; e < 2; ++e)
    for (int j = 0; j <= product.jmax; ++j)
      for (int a = 0; a <= product.amax; ++a) {
        const R& c = product.at(e, j, a);
        if (c == 0) continue;
        auto s = summer.sum(e ^ outer_comp, a + q, j);
        tail.value += c * s.value;
        tail.bound += abs(c) * s.bound;
      }
  if (barred) tail.value = -tail.value;

  // Error of the harmonic expansions, |E(n)| <= D (1 + ln n)^m.
  R with_err = 1, without = 1;
  for (std::size_t t = 0; t < m; ++t) {
    with_err *= K_bounds[t] + errors[t];
    without *= K_bounds[t];
  }
  R D = with_err - without;
  if (m > 0) {
    const R& L = summer.log_cutoff();
    if (!barred) {
      // sum_{n>N} n^{-q} (1+ln n)^m <= int_N^inf, decreasing since q(1+ln N) > m.
      R acc = 0;
      for (std::size_t j = 0; j <= m; ++j)
        acc += to_real<R>(Rational(binomial(static_cast<long>(m), static_cast<long>(j)))) *
               summer.integral(q, static_cast<int>(j));
      tail.bound += D * acc;
    } else {
      tail.bound += 2 * D * pow(1 + L, static_cast<int>(m)) * pow(R(N), -q);
    }
  }

  Evaluated<R> out;
  out.value = direct + tail.value;
  out.bound = tail.bound +
              unit_roundoff<R>() * R(static_cast<double>(N) * static_cast<double>(m + 2) * 4 + 1e4) *
                  (magnitude + abs(tail.value) + 1);
  return out;
}

/// Smallest power-of-two cut-off for which x^{-q} ln^j x is safely monotone.
inline long euler_sum_start(const std::vector<int>& inner, int outer) {
  int logs = static_cast<int>(std::count(inner.begin(), inner.end(), 1));
  double need = 8.0 * std::exp(static_cast<double>(logs) / std::abs(outer));
  long N = 64;
  while (static_cast<double>(N) < need) N *= 2;
  return N;
}

}  // namespace eulersum::detail
