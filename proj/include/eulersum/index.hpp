#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eulersum {

/// Identifies S_{pi,q}: inner harmonic exponents (negative = alternating
/// harmonic number) and a signed outer exponent (negative = (-1)^(n-1)).
///
/// Canonical inner order: positives ascending, then negatives ascending by
/// absolute value.
struct EulerSumIndex {
  std::vector<int> inner;
  int outer = 2;

  int weight() const noexcept;
  int degree() const noexcept { return static_cast<int>(inner.size()); }
  bool alternating() const noexcept;
  /// Barred outer 1: the defining series only converges conditionally.
  bool conditionally_convergent() const noexcept { return outer == -1; }

  bool operator==(const EulerSumIndex&) const = default;
};

/// Validates and canonicalizes. Throws ParseError on zero entries and
/// DivergenceError on outer +1.
EulerSumIndex make_index(std::vector<int> inner, int outer);

/// Re-checks an index that may have been built by hand.
void validate_index(const EulerSumIndex& idx);

/// `S(1,1,-3)` or `1,1,-3`; the last entry is the outer exponent.
EulerSumIndex parse_index(std::string_view text);

enum class RenderStyle { Plain, Latex, Json };

std::string render_index(const EulerSumIndex& idx, RenderStyle style);

int index_weight(const EulerSumIndex& idx);
int index_degree(const EulerSumIndex& idx);

}  // namespace eulersum
