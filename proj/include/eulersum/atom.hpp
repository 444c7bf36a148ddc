#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace eulersum {

/// One (alternating) multiple zeta value, or the polylog constant Li_q(1/2).
///
/// Zeta arguments are signed: -s stands for a barred s, i.e. a factor
/// (-1)^n on that summation variable. z(-1) is -ln 2.
class MzvAtom {
 public:
  enum class Kind : std::uint8_t { Zeta = 0, PolylogHalf = 1 };

  /// Throws std::logic_error on a zero entry, an empty list or a leading +1.
  static MzvAtom zeta(std::vector<int> args);
  /// Li_q(1/2), q >= 1.
  static MzvAtom polylog_half(int q);

  Kind kind() const noexcept { return kind_; }
  bool is_zeta() const noexcept { return kind_ == Kind::Zeta; }
  bool is_polylog() const noexcept { return kind_ == Kind::PolylogHalf; }

  /// Zeta arguments, or {q} for Li_q(1/2).
  const std::vector<int>& args() const noexcept { return args_; }
  int weight() const noexcept;
  int depth() const noexcept { return static_cast<int>(args_.size()); }
  bool alternating() const noexcept;

  /// Zeta atoms first, then lexicographic on (|a|, a < 0) per entry.
  std::strong_ordering operator<=>(const MzvAtom& other) const noexcept;
  bool operator==(const MzvAtom& other) const noexcept = default;

 private:
  MzvAtom(Kind kind, std::vector<int> args) : kind_(kind), args_(std::move(args)) {}

  Kind kind_ = Kind::Zeta;
  std::vector<int> args_;
};

bool is_admissible(const std::vector<int>& args) noexcept;

/// `z(5,-1)` or `Li(4,1/2)`.
std::string render_plain(const MzvAtom& atom);
/// `\zeta(\bar{5},1)`, `\mathrm{Li}_{4}(1/2)`.
std::string render_latex(const MzvAtom& atom);

/// Inverse of render_plain. Throws ParseError.
MzvAtom parse_atom(std::string_view text);

}  // namespace eulersum
