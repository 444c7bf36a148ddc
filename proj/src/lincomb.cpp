#include "eulersum/lincomb.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "eulersum/errors.hpp"

namespace eulersum {

SymbolicTerm::SymbolicTerm(std::vector<MzvAtom> factors) : factors_(std::move(factors)) {
  std::sort(factors_.begin(), factors_.end());
}

int SymbolicTerm::weight() const noexcept {
  int w = 0;
  for (const auto& a : factors_) w += a.weight();
  return w;
}

std::size_t SymbolicTerm::count(const MzvAtom& atom) const noexcept {
  return static_cast<std::size_t>(std::count(factors_.begin(), factors_.end(), atom));
}

std::strong_ordering SymbolicTerm::operator<=>(const SymbolicTerm& other) const noexcept {
  if (auto c = factors_.size() <=> other.factors_.size(); c != 0) return c;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (auto c = factors_[i] <=> other.factors_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

SymbolicTerm operator*(const SymbolicTerm& a, const SymbolicTerm& b) {
  SymbolicTerm out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  std::merge(a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
             std::back_inserter(out.factors_));
  return out;
}

LinComb LinComb::constant(const Rational& c) { return of(SymbolicTerm{}, c); }

LinComb LinComb::of(const MzvAtom& atom, const Rational& c) {
  return of(SymbolicTerm{atom}, c);
}

LinComb LinComb::of(const SymbolicTerm& term, const Rational& c) {
  LinComb x;
  x.add(term, c);
  return x;
}

void LinComb::add(const SymbolicTerm& term, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(term, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational LinComb::coeff(const SymbolicTerm& term) const {
  auto it = terms_.find(term);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> LinComb::homogeneous_weight() const {
  std::optional<int> w;
  for (const auto& [t, c] : terms_) {
    if (!w) w = t.weight();
    else if (*w != t.weight()) return std::nullopt;
  }
  return w;
}

LinComb& LinComb::operator+=(const LinComb& other) {
  for (const auto& [t, c] : other.terms_) add(t, c);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& other) {
  for (const auto& [t, c] : other.terms_) add(t, -c);
  return *this;
}

LinComb& LinComb::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, v] : terms_) v *= c;
  return *this;
}

LinComb LinComb::operator-() const {
  LinComb out = *this;
  for (auto& [t, v] : out.terms_) v = -v;
  return out;
}

LinComb lincomb_add(const LinComb& a, const LinComb& b) {
  LinComb out = a;
  out += b;
  return out;
}

LinComb lincomb_mul(const LinComb& a, const LinComb& b) {
  LinComb out;
  for (const auto& [ta, ca] : a)
    for (const auto& [tb, cb] : b) out.add(ta * tb, ca * cb);
  return out;
}

LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
LinComb operator*(const LinComb& a, const LinComb& b) { return lincomb_mul(a, b); }
LinComb operator*(LinComb a, const Rational& c) { return a *= c; }
LinComb operator*(const Rational& c, LinComb a) { return a *= c; }

LinComb pow(const LinComb& x, unsigned k) {
  LinComb out = LinComb::constant(1);
  for (unsigned i = 0; i < k; ++i) out = out * x;
  return out;
}

std::vector<MzvAtom> atoms_of(const LinComb& x) {
  std::set<MzvAtom> seen;
  for (const auto& [t, c] : x)
    for (const auto& a : t.factors()) seen.insert(a);
  return {seen.begin(), seen.end()};
}

// ---------------------------------------------------------------- rendering

namespace {

template <class AtomFn>
std::string render_factors(const SymbolicTerm& term, AtomFn&& atom_fn, const char* power_open,
                           const char* power_close, const char* sep) {
  std::string s;
  const auto& f = term.factors();
  for (std::size_t i = 0; i < f.size();) {
    std::size_t j = i;
    while (j < f.size() && f[j] == f[i]) ++j;
    if (!s.empty()) s += sep;
    s += atom_fn(f[i]);
    if (j - i > 1) s += power_open + std::to_string(j - i) + power_close;
    i = j;
  }
  return s;
}

std::string plain_factors(const SymbolicTerm& t) {
  return render_factors(t, [](const MzvAtom& a) { return render_plain(a); }, "^", "", "*");
}

std::string latex_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return "\\frac{" + numerator(r).str() + "}{" + denominator(r).str() + "}";
}

std::string latex_power(std::string base_head, std::string args, std::size_t k) {
  if (k == 1) return base_head + args;
  return base_head + "^{" + std::to_string(k) + "}" + args;
}

}  // namespace

std::string render_plain(const SymbolicTerm& term) {
  return term.is_unit() ? "1" : plain_factors(term);
}

std::string render_plain(const LinComb& x) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [t, c] : x) {
    Rational mag = abs(c);
    bool neg = c < 0;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (t.is_unit()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + "*";
      s += plain_factors(t);
    }
  }
  return s;
}

std::string render_latex(const LinComb& x) {
  if (x.empty()) return "0";
  const MzvAtom ln2_atom = MzvAtom::zeta({-1});
  std::string s;
  for (const auto& [t, c0] : x) {
    Rational c = c0;
    std::string body, logs;
    const auto& f = t.factors();
    for (std::size_t i = 0; i < f.size();) {
      std::size_t j = i;
      while (j < f.size() && f[j] == f[i]) ++j;
      std::size_t k = j - i;
      if (f[i] == ln2_atom) {
        // ln 2 goes last, after the zeta and Li factors.
        if (k % 2) c = -c;
        logs = k == 1 ? "\\ln 2" : "\\ln^{" + std::to_string(k) + "}2";
        i = j;
        continue;
      }
      if (!body.empty()) body += " ";
      if (f[i].is_polylog()) {
        body += latex_power("\\mathrm{Li}_{" + std::to_string(f[i].args()[0]) + "}", "(1/2)", k);
      } else {
        std::string full = render_latex(f[i]);
        body += latex_power("\\zeta", full.substr(5), k);
      }
      i = j;
    }
    if (!logs.empty()) body += (body.empty() ? "" : " ") + logs;
    Rational mag = abs(c);
    bool neg = c < 0;
    if (s.empty()) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    if (body.empty()) s += latex_rational(mag);
    else s += (mag == 1 ? "" : latex_rational(mag) + " ") + body;
  }
  return s;
}

// ------------------------------------------------------------------ parsing

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, const SumResolver& resolver)
      : text_(text), resolver_(resolver) {}

  LinComb parse() {
    LinComb out;
    skip_ws();
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      LinComb t = term();
      out += sign > 0 ? t : -t;
      skip_ws();
      if (pos_ >= text_.size()) break;
      if (peek() != '+' && peek() != '-') throw ParseError("expected '+' or '-'", pos_);
    }
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return out;
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  LinComb term() {
    LinComb t = factor();
    while (true) {
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
      t = t * factor();
    }
    return t;
  }

  unsigned exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    skip_ws();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError("expected exponent", pos_);
    return static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
  }

  std::size_t matching_paren(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < text_.size(); ++i) {
      if (text_[i] == '(') ++depth;
      if (text_[i] == ')' && --depth == 0) return i;
    }
    throw ParseError("unbalanced parenthesis", open);
  }

  LinComb factor() {
    skip_ws();
    std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
      try {
        return LinComb::constant(parse_rational(text_.substr(start, pos_ - start)));
      } catch (const ParseError&) {
        throw ParseError("bad rational", start);
      }
    }
    auto rest = text_.substr(pos_);
    if (rest.substr(0, 3) == "ln2") {
      pos_ += 3;
      return pow(LinComb::of(MzvAtom::zeta({-1}), -1), exponent());
    }
    if (rest.substr(0, 2) == "z(" || rest.substr(0, 3) == "Li(") {
      std::size_t close = matching_paren(pos_ + (rest[0] == 'z' ? 1 : 2));
      MzvAtom a = [&] {
        try {
          return parse_atom(text_.substr(start, close + 1 - start));
        } catch (const ParseError& e) {
          throw ParseError("bad atom", start + e.position());
        }
      }();
      pos_ = close + 1;
      return pow(LinComb::of(a), exponent());
    }
    if (rest.substr(0, 2) == "S(" && resolver_) {
      std::size_t close = matching_paren(pos_ + 1);
      LinComb s = resolver_(text_.substr(start, close + 1 - start));
      pos_ = close + 1;
      return pow(s, exponent());
    }
    throw ParseError("expected a factor", start);
  }

  std::string_view text_;
  const SumResolver& resolver_;
  std::size_t pos_ = 0;
};

}  // namespace

LinComb parse_lincomb(std::string_view text, const SumResolver& resolver) {
  return ExprParser(text, resolver).parse();
}

}  // namespace eulersum
