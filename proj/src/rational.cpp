#include "eulersum/rational.hpp"

#include <cctype>
#include <mutex>
#include <deque>

#include "eulersum/errors.hpp"

namespace eulersum {

namespace {

BigInt parse_integer(std::string_view text, std::size_t offset) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw ParseError("expected digits", offset + i);
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw ParseError("unexpected character in rational", offset + j);
  }
  BigInt value(std::string(text.substr(i)));
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, 0));
  BigInt num = parse_integer(text.substr(0, slash), 0);
  auto den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    throw ParseError("signed denominator", slash + 1);
  BigInt den = parse_integer(den_text, slash + 1);
  if (den == 0) throw ParseError("zero denominator", slash + 1);
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt b = 1;
  for (long i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

const Rational& bernoulli(unsigned n) {
  // deque keeps handed-out references valid while the table grows.
  // Recurrence: sum_{k=0}^{m} C(m+1,k) B_k = 0.
  static std::deque<Rational> table{Rational(1)};
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  while (table.size() <= n) {
    unsigned m = static_cast<unsigned>(table.size());
    Rational sum = 0;
    for (unsigned k = 0; k < m; ++k) sum += Rational(binomial(m + 1, k)) * table[k];
    table.push_back(-sum / Rational(m + 1));
  }
  return table[n];
}

Rational pow2(int e) {
  BigInt p = 1;
  p <<= static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

}  // namespace eulersum
