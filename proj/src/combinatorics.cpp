#include "eulersum/combinatorics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "eulersum/errors.hpp"

namespace eulersum {

namespace {

constexpr int kMaxComposition = 30;
constexpr int kMaxPermutation = 10;

void check_perm_size(std::size_t m) {
  if (m < 1 || m > kMaxPermutation)
    throw SizeError("permutation size " + std::to_string(m) + " outside [1, 10]");
}

// Compositions of m with exactly p parts, lexicographic.
void with_parts(int m, int p, Composition& prefix, std::vector<Composition>& out) {
  if (p == 1) {
    prefix.push_back(m);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int first = 1; first <= m - (p - 1); ++first) {
    prefix.push_back(first);
    with_parts(m - first, p - 1, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Composition> compositions(int m) {
  if (m < 1 || m > kMaxComposition)
    throw SizeError("composition size " + std::to_string(m) + " outside [1, 30]");
  std::vector<Composition> out;
  out.reserve(std::size_t{1} << (m - 1));
  Composition prefix;
  for (int p = 1; p <= m; ++p) with_parts(m, p, prefix, out);
  return out;
}

BigInt multinomial(int m, const Composition& parts) {
  long sum = 0;
  for (int p : parts) {
    if (p < 0) throw PreconditionError("negative multinomial part");
    sum += p;
  }
  if (sum != m) throw PreconditionError("multinomial parts do not sum to m");
  BigInt r = factorial(static_cast<unsigned>(m));
  for (int p : parts) r /= factorial(static_cast<unsigned>(p));
  return r;
}

PermutationStream::PermutationStream(int m) {
  if (m < 1) check_perm_size(0);
  check_perm_size(static_cast<std::size_t>(m));
  current_.resize(static_cast<std::size_t>(m));
  std::iota(current_.begin(), current_.end(), 1);
}

bool PermutationStream::next() {
  if (done_) return false;
  if (!started_) return started_ = true;
  done_ = !std::next_permutation(current_.begin(), current_.end());
  return !done_;
}

MultisetPermutationStream::MultisetPermutationStream(std::vector<int> values)
    : current_(std::move(values)) {
  check_perm_size(current_.size());
  std::sort(current_.begin(), current_.end());
}

bool MultisetPermutationStream::next() {
  if (done_) return false;
  if (!started_) return started_ = true;
  done_ = !std::next_permutation(current_.begin(), current_.end());
  return !done_;
}

}  // namespace eulersum
