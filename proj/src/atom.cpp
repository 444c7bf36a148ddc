#include "eulersum/atom.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

#include "eulersum/errors.hpp"

namespace eulersum {

bool is_admissible(const std::vector<int>& args) noexcept {
  if (args.empty() || args.front() == 1) return false;
  for (int a : args)
    if (a == 0) return false;
  return true;
}

MzvAtom MzvAtom::zeta(std::vector<int> args) {
  if (!is_admissible(args)) {
    std::string s;
    for (int a : args) s += (s.empty() ? "" : ",") + std::to_string(a);
    throw std::logic_error("non-admissible zeta arguments (" + s + ")");
  }
  return MzvAtom(Kind::Zeta, std::move(args));
}

MzvAtom MzvAtom::polylog_half(int q) {
  if (q < 1) throw std::logic_error("Li(q,1/2) needs q >= 1");
  return MzvAtom(Kind::PolylogHalf, {q});
}

int MzvAtom::weight() const noexcept {
  int w = 0;
  for (int a : args_) w += std::abs(a);
  return w;
}

bool MzvAtom::alternating() const noexcept {
  if (kind_ == Kind::PolylogHalf) return true;
  for (int a : args_)
    if (a < 0) return true;
  return false;
}

std::strong_ordering MzvAtom::operator<=>(const MzvAtom& other) const noexcept {
  if (auto c = kind_ <=> other.kind_; c != 0) return c;
  std::size_t n = std::min(args_.size(), other.args_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int a = args_[i], b = other.args_[i];
    if (auto c = std::abs(a) <=> std::abs(b); c != 0) return c;
    if (auto c = (a < 0) <=> (b < 0); c != 0) return c;
  }
  return args_.size() <=> other.args_.size();
}

std::string render_plain(const MzvAtom& atom) {
  if (atom.is_polylog()) return "Li(" + std::to_string(atom.args()[0]) + ",1/2)";
  std::string s = "z(";
  for (std::size_t i = 0; i < atom.args().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(atom.args()[i]);
  }
  return s + ")";
}

std::string render_latex(const MzvAtom& atom) {
  if (atom.is_polylog())
    return "\\mathrm{Li}_{" + std::to_string(atom.args()[0]) + "}(1/2)";
  std::string s = "\\zeta(";
  for (std::size_t i = 0; i < atom.args().size(); ++i) {
    int a = atom.args()[i];
    if (i) s += ',';
    s += a < 0 ? "\\bar{" + std::to_string(-a) + "}" : std::to_string(a);
  }
  return s + ")";
}

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
  }
  int integer() {
    skip_ws();
    std::size_t start = pos;
    bool neg = false;
    if (pos < text.size() && text[pos] == '-') {
      neg = true;
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw ParseError("expected integer", pos);
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 100000) throw ParseError("integer too large", start);
      ++pos;
    }
    return static_cast<int>(neg ? -v : v);
  }
};

}  // namespace

MzvAtom parse_atom(std::string_view text) {
  Cursor c{text};
  c.skip_ws();
  if (text.substr(c.pos, 3) == "Li(") {
    c.pos += 3;
    int q = c.integer();
    c.expect(',');
    c.skip_ws();
    if (text.substr(c.pos, 3) != "1/2") throw ParseError("expected 1/2", c.pos);
    c.pos += 3;
    c.expect(')');
    c.skip_ws();
    if (c.pos != text.size()) throw ParseError("trailing input", c.pos);
    if (q < 1) throw ParseError("Li order must be positive", 3);
    return MzvAtom::polylog_half(q);
  }
  if (text.substr(c.pos, 2) != "z(") throw ParseError("expected z( or Li(", c.pos);
  c.pos += 2;
  std::vector<int> args;
  do {
    std::size_t at = c.pos;
    int a = c.integer();
    if (a == 0) throw ParseError("zero argument", at);
    args.push_back(a);
  } while (c.accept(','));
  c.expect(')');
  c.skip_ws();
  if (c.pos != text.size()) throw ParseError("trailing input", c.pos);
  if (args.front() == 1) throw DivergenceError("z(1,...) diverges");
  return MzvAtom::zeta(std::move(args));
}

}  // namespace eulersum
