#pragma once

#include <vector>

#include "eulersum/rational.hpp"

namespace eulersum {

using Composition = std::vector<int>;

/// All 2^(m-1) compositions of m, ordered by part count and then
/// lexicographically. Throws SizeError for m < 1 or m > 30.
std::vector<Composition> compositions(int m);

/// m! / prod parts_i!. Throws PreconditionError when the parts do not sum to m.
BigInt multinomial(int m, const Composition& parts);

/// Lazy lexicographic stream over the permutations of {1..m}, 1 <= m <= 10.
///
///   PermutationStream s(3);
///   while (s.next()) use(s.current());
class PermutationStream {
 public:
  explicit PermutationStream(int m);
  bool next();
  const std::vector<int>& current() const noexcept { return current_; }

 private:
  std::vector<int> current_;
  bool started_ = false;
  bool done_ = false;
};

/// Each distinct ordering of a multiset exactly once, lexicographic.
/// Same size limits as PermutationStream.
class MultisetPermutationStream {
 public:
  explicit MultisetPermutationStream(std::vector<int> values);
  bool next();
  const std::vector<int>& current() const noexcept { return current_; }

 private:
  std::vector<int> current_;
  bool started_ = false;
  bool done_ = false;
};

}  // namespace eulersum
