#include "eulersum/reduction.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "eulersum/errors.hpp"
#include "eulersum/expansion.hpp"

namespace eulersum {

namespace {

/// zeta(r; sign), with the unbarred zeta(1) read as 0.
LinComb zs(int r, int sign) {
  if (r == 1 && sign > 0) return {};
  return LinComb::of(MzvAtom::zeta({sign > 0 ? r : -r}));
}

int sgn(int a) { return a < 0 ? -1 : 1; }

int parity_sign(long n) { return n % 2 == 0 ? 1 : -1; }

Rational q(const BigInt& n) { return Rational(n); }

bool all_equal(const std::vector<int>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

}  // namespace

LinComb w_integral(int k, int l) {
  if (k < 1 || l < 0 || k + l > 30) throw PreconditionError("W(k,l) needs k >= 1, l >= 0, k + l <= 30");
  static std::recursive_mutex mu;
  static std::map<std::pair<int, int>, LinComb> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find({k, l}); it != cache.end()) return it->second;

  LinComb w = zs(k + l + 1, 1) * (Rational(parity_sign(k + l)) * q(factorial(k + l)) / Rational(l + 1));
  for (int i = 1; i <= k - 1; ++i) {
    for (int j = 1; j <= l; ++j) {
      Rational c = q(binomial(k - 1, i - 1)) * q(binomial(l, j)) * Rational(parity_sign(i + j)) * q(factorial(i + j - 1));
      w -= c * (zs(i + j, 1) * w_integral(k - i, l - j));
    }
  }
  cache.emplace(std::make_pair(k, l), w);
  return w;
}

LinComb zeta_k1l(int k, int l) {
  Rational c = Rational(parity_sign(k + l)) / (q(factorial(k)) * q(factorial(l)));
  return c * w_integral(k, l);
}

std::optional<LinComb> rule_depth2_oddweight(const MzvAtom& atom) {
  if (!atom.is_zeta() || atom.depth() != 2 || atom.weight() % 2 == 0) return std::nullopt;
  const int s = std::abs(atom.args()[0]), t = std::abs(atom.args()[1]);
  const int si = sgn(atom.args()[0]), ta = sgn(atom.args()[1]);
  const int w = s + t;
  const Rational ps(parity_sign(s));

  auto lambda = [&](int r) { return zs(r, si * ta); };
  auto mu = [&](int r) {
    return ps * (q(binomial(r - 1, s - 1)) * zs(r, si) + q(binomial(r - 1, t - 1)) * zs(r, ta));
  };

  LinComb out = -lambda(w) + mu(w);
  if (s % 2 == 0) out += Rational(2) * (zs(s, si) * zs(t, ta));
  out *= Rational(1, 2);
  for (int k = 1; 2 * k < w; ++k) out -= lambda(2 * k) * mu(w - 2 * k);
  return out;
}

std::optional<LinComb> rule_reflection(int a, int b) {
  if (!is_admissible({a, b}) || !is_admissible({b, a})) return std::nullopt;
  return zs(std::abs(a), sgn(a)) * zs(std::abs(b), sgn(b)) - zs(std::abs(a) + std::abs(b), sgn(a) * sgn(b));
}

std::optional<LinComb> rule_reflection3(int a, int b, int c) {
  for (int x : {a, b, c})
    if (x == 1 || x == 0) return std::nullopt;
  auto z = [](int x) { return zs(std::abs(x), sgn(x)); };
  auto merged = [](int x, int y) { return zs(std::abs(x) + std::abs(y), sgn(x) * sgn(y)); };
  LinComb out = z(a) * z(b) * z(c);
  out += Rational(2) * zs(std::abs(a) + std::abs(b) + std::abs(c), sgn(a) * sgn(b) * sgn(c));
  out -= z(a) * merged(b, c);
  out -= z(b) * merged(a, c);
  out -= z(c) * merged(a, b);
  return out;
}

LinComb rule_repeated(int r, int m) {
  if (m < 1 || r == 0 || r == 1) throw PreconditionError("repeated-argument rule needs m >= 1 and r != 0, 1");
  const int a = std::abs(r);
  auto power_sum = [&](int j) { return zs(a * j, (r < 0 && j % 2 == 1) ? -1 : 1); };
  std::vector<LinComb> B{LinComb::constant(1)};
  for (int n = 1; n <= m; ++n) {
    LinComb acc;
    for (int i = 0; i < n; ++i) acc += Rational(parity_sign(i)) * (B[static_cast<std::size_t>(i)] * power_sum(n - i));
    B.push_back(Rational(parity_sign(n - 1), n) * acc);
  }
  return B.back();
}

LinComb rule_alt_depth1(const MzvAtom& atom) {
  if (!atom.is_zeta() || atom.depth() != 1 || atom.args()[0] > -2)
    throw PreconditionError("alternating depth-one rule needs a barred s >= 2");
  const int s = -atom.args()[0];
  return LinComb::of(MzvAtom::zeta({s}), pow2(1 - s) - 1);
}

namespace {

/// zeta(2a) / (2 pi)^(2a).
Rational even_zeta_ratio(int two_a) {
  const int a = two_a / 2;
  return Rational(parity_sign(a + 1)) * bernoulli(static_cast<unsigned>(two_a)) / (2 * q(factorial(two_a)));
}

bool is_plain_even(const MzvAtom& x) { return x.is_zeta() && x.depth() == 1 && x.args()[0] > 0 && x.args()[0] % 2 == 0; }

}  // namespace

LinComb collapse_even_zetas(const LinComb& x) {
  LinComb out;
  for (const auto& [term, c] : x) {
    std::vector<MzvAtom> keep;
    int total = 0, count = 0;
    Rational factor = 1;
    for (const auto& f : term.factors()) {
      if (is_plain_even(f)) {
        total += f.args()[0];
        ++count;
        factor *= even_zeta_ratio(f.args()[0]);
      } else {
        keep.push_back(f);
      }
    }
    if (count < 2) {
      out.add(term, c);
      continue;
    }
    keep.push_back(MzvAtom::zeta({total}));
    out.add(SymbolicTerm(std::move(keep)), c * factor / even_zeta_ratio(total));
  }
  return out;
}

LinComb SumRelation::resolve() const {
  LinComb out = rest;
  for (const auto& [idx, c] : sums) out += c * expand_theorem1(idx);
  return out;
}

std::string SumRelation::render() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : sums) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (mag != 1) os << to_string(mag) << "*";
    os << render_index(idx, RenderStyle::Plain);
    first = false;
  }
  if (!rest.empty()) {
    std::string r = render_plain(rest);
    if (first) os << r;
    else if (r.front() == '-') os << " - " << r.substr(1);
    else os << " + " << r;
  }
  return os.str();
}

SumRelation rule_symmetric_triple(int i, int j, int k) {
  if (i < 1 || j < i || k < 2) throw PreconditionError("symmetric triple needs j >= i >= 1 and k >= 2");
  SumRelation rel;
  rel.sums.emplace_back(make_index({i, j}, k), Rational(1));
  rel.sums.emplace_back(make_index({i}, j + k), Rational(-1));
  rel.sums.emplace_back(make_index({j}, i + k), Rational(-1));
  rel.sums.emplace_back(make_index({i + j}, k), Rational(-1));
  rel.rest = LinComb::of(MzvAtom::zeta({i + j + k}), 2);
  return rel;
}

Ruleset default_ruleset() {
  Ruleset rules;
  rules.push_back({"azv",
                   [](const MzvAtom& x) { return x.is_zeta() && x.depth() == 1 && x.args()[0] <= -2; },
                   [](const MzvAtom& x) { return rule_alt_depth1(x); }});
  rules.push_back({"repeated-argument",
                   [](const MzvAtom& x) { return x.is_zeta() && x.depth() >= 2 && all_equal(x.args()); },
                   [](const MzvAtom& x) { return rule_repeated(x.args()[0], x.depth()); }});
  rules.push_back({"zeta-k1l",
                   [](const MzvAtom& x) {
                     const auto& a = x.args();
                     return x.is_zeta() && x.depth() >= 2 && a[0] >= 2 && x.weight() <= 31 &&
                            std::all_of(a.begin() + 1, a.end(), [](int v) { return v == 1; });
                   },
                   [](const MzvAtom& x) { return zeta_k1l(x.args()[0] - 1, x.depth() - 1); }});
  rules.push_back({"depth2-odd-weight",
                   [](const MzvAtom& x) { return x.is_zeta() && x.depth() == 2 && x.weight() % 2 == 1; },
                   [](const MzvAtom& x) { return *rule_depth2_oddweight(x); }});
  return rules;
}

namespace {

class Reducer {
 public:
  Reducer(const std::vector<IdentityTable>& tables, const Ruleset& rules, const ReductionOptions& opts)
      : tables_(tables), rules_(rules), opts_(opts) {}

  ReductionResult run(const LinComb& input) {
    LinComb cur = input;
    for (;;) {
      cur = substitute(cur);
      bool changed = false;
      if (opts_.pair_reflection)
        while (pair_step(cur)) changed = true;
      if (opts_.triple_reflection)
        while (triple_step(cur)) changed = true;
      if (!changed) break;
    }
    result_.value = cur;
    for (const auto& a : atoms_of(cur))
      if (a.is_zeta() && a.depth() >= 2) result_.unresolved.push_back(a);
    return std::move(result_);
  }

 private:
  void record(std::string rule, std::string target) {
    if (result_.trace.size() >= kMaxTraceSteps) {
      result_.trace_truncated = true;
      return;
    }
    result_.trace.push_back({std::move(rule), std::move(target)});
  }

  LinComb substitute(const LinComb& x) {
    LinComb out;
    for (const auto& [term, c] : x) {
      bool untouched = true;
      for (const auto& f : term.factors())
        if (!(normal(f).size() == 1 && normal(f).contains(SymbolicTerm{f}))) untouched = false;
      if (untouched) {
        out.add(term, c);
        continue;
      }
      LinComb prod = LinComb::constant(c);
      for (const auto& f : term.factors()) prod = prod * normal(f);
      out += prod;
    }
    if (opts_.even_zeta_collapse) {
      LinComb collapsed = collapse_even_zetas(out);
      if (!(collapsed == out)) record("even-zeta-product", "");
      return collapsed;
    }
    return out;
  }

  const LinComb& normal(const MzvAtom& atom) {
    if (auto it = memo_.find(atom); it != memo_.end()) return it->second;
    if (active_.count(atom)) {
      // a cycle through the tables; stop here and keep the atom
      return memo_.emplace(atom, LinComb::of(atom)).first->second;
    }
    std::optional<LinComb> rhs;
    std::string rule;
    for (const auto& table : tables_) {
      if (const LinComb* hit = table.find(atom)) {
        rhs = *hit;
        rule = "table:" + table.source;
        break;
      }
    }
    if (!rhs) {
      for (const auto& r : rules_) {
        if (r.matcher(atom)) {
          rhs = r.rewriter(atom);
          rule = r.name;
          break;
        }
      }
    }
    if (!rhs) return memo_.emplace(atom, LinComb::of(atom)).first->second;
    if (auto w = rhs->homogeneous_weight(); !rhs->empty() && (!w || *w != atom.weight()))
      throw std::logic_error("rule " + rule + " broke weight homogeneity on " + render_plain(atom));
    record(rule, render_plain(atom));
    active_.insert(atom);
    LinComb done = substitute(*rhs);
    active_.erase(atom);
    return memo_.insert_or_assign(atom, std::move(done)).first->second;
  }

  static SymbolicTerm without(const SymbolicTerm& term, const MzvAtom& x) {
    std::vector<MzvAtom> rest = term.factors();
    rest.erase(std::find(rest.begin(), rest.end(), x));
    return SymbolicTerm(std::move(rest));
  }

  /// zeta(a,b) and zeta(b,a) both present with the same cofactor.
  bool pair_step(LinComb& x) {
    for (const auto& [term, c] : x) {
      for (const auto& f : term.factors()) {
        if (!f.is_zeta() || f.depth() != 2 || term.count(f) != 1) continue;
        const int a = f.args()[0], b = f.args()[1];
        if (a == b || !is_admissible({b, a})) continue;
        const MzvAtom g = MzvAtom::zeta({b, a});
        const SymbolicTerm co = without(term, f);
        if (!x.contains(co * SymbolicTerm{g})) continue;
        const MzvAtom& victim = std::min(f, g);
        const MzvAtom& other = std::max(f, g);
        const SymbolicTerm vt = co * SymbolicTerm{victim};
        const Rational cv = x.coeff(vt);
        LinComb repl = (*rule_reflection(a, b) - LinComb::of(other)) * LinComb::of(co);
        record("reflection", render_plain(victim));
        x.erase(vt);
        x += cv * repl;
        return true;
      }
    }
    return false;
  }

  /// Every distinct ordering of zeta(a,b,c) present with the same cofactor.
  bool triple_step(LinComb& x) {
    for (const auto& [term, c] : x) {
      for (const auto& f : term.factors()) {
        if (!f.is_zeta() || f.depth() != 3 || term.count(f) != 1) continue;
        std::vector<int> args = f.args();
        auto rhs = rule_reflection3(args[0], args[1], args[2]);
        if (!rhs) continue;
        std::sort(args.begin(), args.end());
        std::vector<MzvAtom> orders;
        do orders.push_back(MzvAtom::zeta(args));
        while (std::next_permutation(args.begin(), args.end()));
        const SymbolicTerm co = without(term, f);
        bool complete = std::all_of(orders.begin(), orders.end(),
                                    [&](const MzvAtom& y) { return x.contains(co * SymbolicTerm{y}); });
        if (!complete) continue;
        const MzvAtom victim = *std::min_element(orders.begin(), orders.end());
        LinComb repl = *rhs * Rational(static_cast<long>(orders.size()), 6);
        for (const auto& y : orders)
          if (!(y == victim)) repl -= LinComb::of(y);
        const SymbolicTerm vt = co * SymbolicTerm{victim};
        const Rational cv = x.coeff(vt);
        record("reflection3", render_plain(victim));
        x.erase(vt);
        x += cv * (repl * LinComb::of(co));
        return true;
      }
    }
    return false;
  }

  const std::vector<IdentityTable>& tables_;
  const Ruleset& rules_;
  ReductionOptions opts_;
  std::map<MzvAtom, LinComb> memo_;
  std::set<MzvAtom> active_;
  ReductionResult result_;
};

}  // namespace

ReductionResult reduce(const LinComb& input, const std::vector<IdentityTable>& tables, const Ruleset& ruleset,
                       const ReductionOptions& opts) {
  return Reducer(tables, ruleset, opts).run(input);
}

IdentityTable build_starter_table(int max_weight) {
  IdentityTable t;
  t.source = "starter";
  auto add = [&](const MzvAtom& a) { t.insert(a, reduce(LinComb::of(a)).value); };
  for (int s = 2; s <= max_weight; ++s) add(MzvAtom::zeta({-s}));
  for (int w = 3; w <= max_weight; ++w)
    for (int l = 1; l <= w - 2; ++l) {
      std::vector<int> args(static_cast<std::size_t>(l + 1), 1);
      args[0] = w - l;
      add(MzvAtom::zeta(args));
    }
  for (int w = 3; w <= max_weight; w += 2)
    for (int s = 1; s < w; ++s)
      for (int si : {1, -1})
        for (int ti : {1, -1}) {
          std::vector<int> args{si * s, ti * (w - s)};
          if (!is_admissible(args) || t.find(MzvAtom::zeta(args))) continue;
          add(MzvAtom::zeta(args));
        }
  return t;
}

}  // namespace eulersum
