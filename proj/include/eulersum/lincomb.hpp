#pragma once

#include <compare>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eulersum/atom.hpp"
#include "eulersum/rational.hpp"

namespace eulersum {

/// Commutative product of atoms. The empty product is the unit term 1.
class SymbolicTerm {
 public:
  SymbolicTerm() = default;
  SymbolicTerm(std::vector<MzvAtom> factors);  // sorts
  SymbolicTerm(std::initializer_list<MzvAtom> factors)
      : SymbolicTerm(std::vector<MzvAtom>(factors)) {}

  const std::vector<MzvAtom>& factors() const noexcept { return factors_; }
  bool is_unit() const noexcept { return factors_.empty(); }
  int weight() const noexcept;
  std::size_t count(const MzvAtom& atom) const noexcept;

  /// Fewer factors first, then factor-wise.
  std::strong_ordering operator<=>(const SymbolicTerm& other) const noexcept;
  bool operator==(const SymbolicTerm& other) const noexcept = default;

  friend SymbolicTerm operator*(const SymbolicTerm& a, const SymbolicTerm& b);

 private:
  std::vector<MzvAtom> factors_;
};

/// Finite Q-linear combination of symbolic terms; zero coefficients are
/// never stored.
class LinComb {
 public:
  using Map = std::map<SymbolicTerm, Rational>;
  using const_iterator = Map::const_iterator;

  LinComb() = default;
  static LinComb constant(const Rational& c);
  static LinComb of(const MzvAtom& atom, const Rational& c = 1);
  static LinComb of(const SymbolicTerm& term, const Rational& c = 1);

  void add(const SymbolicTerm& term, const Rational& c);
  Rational coeff(const SymbolicTerm& term) const;
  bool contains(const SymbolicTerm& term) const { return terms_.count(term) != 0; }
  void erase(const SymbolicTerm& term) { terms_.erase(term); }

  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const_iterator begin() const noexcept { return terms_.begin(); }
  const_iterator end() const noexcept { return terms_.end(); }
  const Map& terms() const noexcept { return terms_; }

  /// Common weight of all terms, nullopt when mixed. Empty combinations
  /// have no weight either.
  std::optional<int> homogeneous_weight() const;

  LinComb& operator+=(const LinComb& other);
  LinComb& operator-=(const LinComb& other);
  LinComb& operator*=(const Rational& c);
  LinComb operator-() const;

  bool operator==(const LinComb& other) const = default;

 private:
  Map terms_;
};

LinComb lincomb_add(const LinComb& a, const LinComb& b);
LinComb lincomb_mul(const LinComb& a, const LinComb& b);

LinComb operator+(LinComb a, const LinComb& b);
LinComb operator-(LinComb a, const LinComb& b);
LinComb operator*(const LinComb& a, const LinComb& b);
LinComb operator*(LinComb a, const Rational& c);
LinComb operator*(const Rational& c, LinComb a);
LinComb pow(const LinComb& x, unsigned k);

/// Every distinct atom occurring in x, sorted.
std::vector<MzvAtom> atoms_of(const LinComb& x);

/// `2*z(2)*z(3)^2 - 1/2*z(5) + 3`, "0" when empty.
std::string render_plain(const SymbolicTerm& term);
std::string render_plain(const LinComb& x);
/// z(-1) is printed as -\ln 2.
std::string render_latex(const LinComb& x);

/// Called on `S(...)` tokens met by parse_lincomb.
using SumResolver = std::function<LinComb(std::string_view)>;

/// Parses the plain rendering. Also accepts `ln2` (= -z(-1)), `^k` powers
/// and, with a resolver, `S(...)` symbols. Throws ParseError.
LinComb parse_lincomb(std::string_view text, const SumResolver& resolver = {});

}  // namespace eulersum
