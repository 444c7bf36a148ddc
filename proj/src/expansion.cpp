#include "eulersum/expansion.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include "eulersum/combinatorics.hpp"
#include "eulersum/errors.hpp"

namespace eulersum {

namespace {

constexpr int kMaxDegree = 10;

struct CompositionData {
  Composition parts;
  Rational inv_factorials;  // 1 / prod parts_i!
};

std::vector<CompositionData> composition_table(int m) {
  std::vector<CompositionData> out;
  for (auto& c : compositions(m)) {
    BigInt d = 1;
    for (int p : c) d *= factorial(static_cast<unsigned>(p));
    out.push_back({std::move(c), Rational(BigInt(1), d)});
  }
  return out;
}

// Merges consecutive blocks of a signed arrangement. A block is barred iff
// it holds an odd number of barred entries.
std::vector<int> merge_blocks(const std::vector<int>& arrangement, const Composition& theta) {
  std::vector<int> key;
  key.reserve(theta.size());
  std::size_t pos = 0;
  for (int len : theta) {
    int sum = 0;
    int barred = 0;
    for (int k = 0; k < len; ++k, ++pos) {
      sum += std::abs(arrangement[pos]);
      barred += arrangement[pos] < 0;
    }
    key.push_back(barred % 2 ? -sum : sum);
  }
  return key;
}

void add_to(MhsComb& into, const std::vector<int>& key, const Rational& c) {
  auto [it, inserted] = into.try_emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) into.erase(it);
}

void check_degree(std::size_t m) {
  if (m > static_cast<std::size_t>(kMaxDegree))
    throw SizeError("degree " + std::to_string(m) + " exceeds the cap of 10");
}

Rational alternating_sign(const std::vector<int>& inner) {
  // prod Hbar = prod(-zeta_n(-i)): one minus sign per barred factor.
  auto barred = std::count_if(inner.begin(), inner.end(), [](int i) { return i < 0; });
  return barred % 2 ? Rational(-1) : Rational(1);
}

// Number of permutations fixing a given arrangement: prod of multiplicity!.
BigInt orbit_size(std::vector<int> values) {
  std::sort(values.begin(), values.end());
  BigInt size = 1;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    size *= factorial(static_cast<unsigned>(j - i));
    i = j;
  }
  return size;
}

}  // namespace

MhsComb expand_product_mhs(const std::vector<int>& inner, const ExpansionOptions& opts) {
  check_degree(inner.size());
  for (int i : inner)
    if (i == 0) throw PreconditionError("zero exponent in harmonic product");
  MhsComb out;
  if (inner.empty()) {
    out[{}] = 1;
    return out;
  }
  const int m = static_cast<int>(inner.size());
  const auto table = composition_table(m);
  const Rational scale = Rational(orbit_size(inner)) * alternating_sign(inner);

  auto worker = [&](unsigned slot, unsigned stride, MhsComb& local) {
    MultisetPermutationStream arrangements(inner);
    for (std::size_t n = 0; arrangements.next(); ++n) {
      if (n % stride != slot) continue;
      for (const auto& c : table)
        add_to(local, merge_blocks(arrangements.current(), c.parts), scale * c.inv_factorials);
    }
  };

  unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker(0, 1, out);
    return out;
  }
  std::vector<MhsComb> partial(jobs);
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t)
    threads.emplace_back(worker, t, jobs, std::ref(partial[t]));
  for (auto& th : threads) th.join();
  for (const auto& p : partial)
    for (const auto& [k, c] : p) add_to(out, k, c);
  return out;
}

LinComb attach_outer(const MhsComb& mhs, int outer) {
  if (outer == 0) throw PreconditionError("zero outer exponent");
  if (outer == 1) throw DivergenceError("outer exponent 1 makes the sum diverge");
  const int q = std::abs(outer);
  const Rational global = outer < 0 ? -1 : 1;
  LinComb out;
  for (const auto& [key, c] : mhs) {
    std::vector<int> first{outer};
    first.insert(first.end(), key.begin(), key.end());
    out.add(SymbolicTerm{MzvAtom::zeta(std::move(first))}, global * c);
    if (key.empty()) continue;
    // n_1 = n: the outer variable merges with the leading MHS variable.
    int merged = q + std::abs(key[0]);
    bool barred = (outer < 0) != (key[0] < 0);
    std::vector<int> second{barred ? -merged : merged};
    second.insert(second.end(), key.begin() + 1, key.end());
    out.add(SymbolicTerm{MzvAtom::zeta(std::move(second))}, global * c);
  }
  return out;
}

LinComb expand_theorem1(const EulerSumIndex& idx, const ExpansionOptions& opts) {
  validate_index(idx);
  check_degree(idx.inner.size());
  return attach_outer(expand_product_mhs(idx.inner, opts), idx.outer);
}

LinComb expand_theorem1_by_permutations(const EulerSumIndex& idx) {
  validate_index(idx);
  if (idx.inner.size() > 8) throw SizeError("literal permutation sum is capped at degree 8");
  MhsComb mhs;
  if (idx.inner.empty()) {
    mhs[{}] = 1;
  } else {
    const int m = idx.degree();
    const auto table = composition_table(m);
    const Rational sign = alternating_sign(idx.inner);
    PermutationStream perms(m);
    std::vector<int> image(idx.inner.size());
    while (perms.next()) {
      for (std::size_t j = 0; j < image.size(); ++j)
        image[j] = idx.inner[static_cast<std::size_t>(perms.current()[j] - 1)];
      for (const auto& c : table) add_to(mhs, merge_blocks(image, c.parts), sign * c.inv_factorials);
    }
  }
  return attach_outer(mhs, idx.outer);
}

bool theorem2_applicable(const EulerSumIndex& idx) noexcept {
  if (idx.outer < 2) return false;
  return std::all_of(idx.inner.begin(), idx.inner.end(), [](int i) { return i >= 2; });
}

LinComb expand_theorem2(const EulerSumIndex& idx) {
  validate_index(idx);
  if (!theorem2_applicable(idx))
    throw PreconditionError(
        "theorem-2 engine needs a non-alternating index with every exponent >= 2");
  check_degree(idx.inner.size());
  const std::size_t m = idx.inner.size();
  LinComb out;
  // H_n^{(i)} = zeta(i) - zeta_{>n}(i); expand the product over subsets J of
  // tail factors. Tails obey the same quasi-shuffle as partial sums, and
  // sum_n n^{-q} zeta_{>n}(K) = zeta(K, q).
  std::map<std::vector<int>, LinComb> tail_cache;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::vector<int> tails;
    LinComb heads = LinComb::constant(1);
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1) tails.push_back(idx.inner[j]);
      else heads = heads * LinComb::of(MzvAtom::zeta({idx.inner[j]}));
    }
    auto it = tail_cache.find(tails);
    if (it == tail_cache.end()) {
      LinComb t;
      for (const auto& [key, c] : expand_product_mhs(tails)) {
        std::vector<int> args = key;
        args.push_back(idx.outer);
        t.add(SymbolicTerm{MzvAtom::zeta(std::move(args))}, c);
      }
      it = tail_cache.emplace(tails, std::move(t)).first;
    }
    Rational sign = tails.size() % 2 ? -1 : 1;
    out += heads * it->second * sign;
  }
  return out;
}

LinComb expand_rm_theorem1(int r, int m, int outer) {
  if (r == 0) throw PreconditionError("zero exponent");
  if (m < 0 || m > 20) throw SizeError("multiplicity outside [0, 20]");
  MhsComb mhs;
  if (m == 0) {
    mhs[{}] = 1;
    return attach_outer(mhs, outer);
  }
  const int a = std::abs(r);
  const Rational sign = (r < 0 && m % 2) ? -1 : 1;
  for (const auto& theta : compositions(m)) {
    std::vector<int> key;
    for (int t : theta) key.push_back((r < 0 && t % 2) ? -a * t : a * t);
    add_to(mhs, key, sign * Rational(multinomial(m, theta)));
  }
  return attach_outer(mhs, outer);
}

LinComb expand_rm_theorem2(int r, int m, int q) {
  if (r < 2 || q < 2) throw PreconditionError("theorem-2 fast path needs r, q >= 2");
  if (m < 0 || m > 20) throw SizeError("multiplicity outside [0, 20]");
  const LinComb zr = LinComb::of(MzvAtom::zeta({r}));
  LinComb out = pow(zr, static_cast<unsigned>(m)) * LinComb::of(MzvAtom::zeta({q}));
  for (int l = 1; l <= m; ++l) {
    LinComb inner;
    for (const auto& eta : compositions(l)) {
      std::vector<int> args;
      for (int e : eta) args.push_back(r * e);
      args.push_back(q);
      inner.add(SymbolicTerm{MzvAtom::zeta(std::move(args))}, Rational(multinomial(l, eta)));
    }
    Rational c = Rational(binomial(m, l)) * (l % 2 ? -1 : 1);
    out += pow(zr, static_cast<unsigned>(m - l)) * inner * c;
  }
  return out;
}

}  // namespace eulersum
