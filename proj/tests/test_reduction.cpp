#include <catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "eulersum/errors.hpp"
#include "eulersum/expansion.hpp"
#include "eulersum/numerics.hpp"
#include "eulersum/reduction.hpp"
#include "support/printers.hpp"
#include "support/generators.hpp"
#include "support/rule_soundness.hpp"

using namespace eulersum;

namespace {

LinComb Z(std::vector<int> a) { return LinComb::of(MzvAtom::zeta(std::move(a))); }
LinComb C(long p, long q = 1) { return LinComb::constant(Rational(p, q)); }
LinComb P(std::string_view s) { return parse_lincomb(s); }
LinComb S(std::string_view s) { return expand_theorem1(parse_index(s)); }
LinComb collapsed(const LinComb& x) { return collapse_even_zetas(x); }
LinComb reduced(const LinComb& x) { return reduce(x).value; }

Evaluator& shared_evaluator() {
  static Evaluator ev;
  return ev;
}

/// |x - y| within the combined certified bounds plus tol.
bool numerically_equal(const LinComb& x, const LinComb& y, double tol) {
  auto a = shared_evaluator().lincomb(x, tol / 10);
  auto b = shared_evaluator().lincomb(y, tol / 10);
  return abs(a.value - b.value) <= a.tail_bound + b.tail_bound + Real(tol);
}

}  // namespace

TEST_CASE("W integrals") {
  CHECK(w_integral(1, 0) == -1 * Z({2}));
  for (int l = 0; l <= 8; ++l)
    CHECK(w_integral(1, l) == Rational(l % 2 ? 1 : -1) * Rational(factorial(l)) * Z({l + 2}));
  for (int k = 1; k <= 8; ++k)
    CHECK(w_integral(k, 0) == Rational(k % 2 ? -1 : 1) * Rational(factorial(k)) * Z({k + 1}));
  CHECK_THROWS_AS(w_integral(0, 2), PreconditionError);
  CHECK_THROWS_AS(w_integral(20, 11), PreconditionError);
}

TEST_CASE("W symmetry holds exactly for k, l <= 8") {
  for (int k = 1; k <= 8; ++k) {
    for (int l = 1; l <= 8; ++l) {
      Rational left = 1 / (Rational(factorial(k)) * Rational(factorial(l - 1)));
      Rational right = 1 / (Rational(factorial(l)) * Rational(factorial(k - 1)));
      INFO("k=" << k << " l=" << l);
      REQUIRE(left * w_integral(k, l - 1) == right * w_integral(l, k - 1));
    }
  }
}

TEST_CASE("zeta(k+1, 1, ..., 1)") {
  CHECK(zeta_k1l(1, 1) == Z({3}));
  CHECK(zeta_k1l(2, 1) == Z({4}) * Rational(3, 2) - P("1/2*z(2)^2"));
  for (int q = 2; q <= 12; ++q) {
    LinComb expect = Rational(q, 2) * Z({q + 1});
    for (int i = 1; i <= q - 2; ++i) expect -= Rational(1, 2) * (Z({i + 1}) * Z({q - i}));
    INFO("q=" << q);
    CHECK(zeta_k1l(q - 1, 1) == expect);
  }
  for (int q = 2; q <= 12; ++q) {
    LinComb expect = Rational(q * (q + 1), 6) * Z({q + 2}) + Rational(1, 2) * (Z({2}) * Z({q}));
    for (int j = 0; j <= q - 2; ++j) expect -= Rational(q, 4) * (Z({j + 2}) * Z({q - j}));
    for (int j = 2; j <= q - 2; ++j)
      for (int i = 0; i <= j - 2; ++i) expect += Rational(1, 6) * (Z({q - j}) * Z({i + 2}) * Z({j - i}));
    INFO("q=" << q);
    CHECK(collapsed(zeta_k1l(q - 1, 2)) == collapsed(expect));
  }
}

TEST_CASE("depth-two values of odd weight") {
  CHECK(rule_depth2_oddweight(MzvAtom::zeta({2, 1})) == Z({3}));
  CHECK_FALSE(rule_depth2_oddweight(MzvAtom::zeta({3, 1})).has_value());
  CHECK(numerically_equal(Z({-4, 1}), *rule_depth2_oddweight(MzvAtom::zeta({-4, 1})), 1e-8));
  // the linear sums of odd weight in closed form
  for (int w = 3; w <= 15; w += 2) {
    for (int p = 1; p <= w - 2; ++p) {
      const int q = w - p;
      const Rational sp(p % 2 ? -1 : 1);
      LinComb expect = Rational(1, 2) * Z({w}) *
                       (Rational(1) - sp * Rational(binomial(w - 1, q)) - sp * Rational(binomial(w - 1, p)));
      if (p % 2 == 1 && p > 1) expect += Z({p}) * Z({q});
      for (int k = 1; 2 * k <= w - 1; ++k) {
        if (w - 2 * k == 1) continue;
        Rational c = sp * (Rational(binomial(w - 2 * k - 1, p - 1)) + Rational(binomial(w - 2 * k - 1, q - 1)));
        expect += c * (Z({2 * k}) * Z({w - 2 * k}));
      }
      INFO("S(" << p << "," << q << ")");
      CHECK(reduced(S("S(" + std::to_string(p) + "," + std::to_string(q) + ")")) == collapsed(expect));
    }
  }
}

TEST_CASE("reflection and repeated arguments") {
  for (int r = 2; r <= 6; ++r) {
    INFO("r=" << r);
    CHECK(Rational(1, 2) * *rule_reflection(r, r) == Rational(1, 2) * (Z({r}) * Z({r}) - Z({2 * r})));
    CHECK(rule_repeated(r, 2) == Rational(1, 2) * (Z({r}) * Z({r}) - Z({2 * r})));
    CHECK(rule_repeated(r, 3) ==
          Rational(1, 6) * pow(Z({r}), 3) - Rational(1, 2) * (Z({r}) * Z({2 * r})) + Rational(1, 3) * Z({3 * r}));
    CHECK(rule_repeated(r, 4) == Rational(1, 24) * pow(Z({r}), 4) - Rational(1, 4) * (pow(Z({r}), 2) * Z({2 * r})) +
                                     Rational(1, 3) * (Z({r}) * Z({3 * r})) + Rational(1, 8) * pow(Z({2 * r}), 2) -
                                     Rational(1, 4) * Z({4 * r}));
    // the six orderings of (r, r, r)
    CHECK(Rational(1, 6) * *rule_reflection3(r, r, r) == rule_repeated(r, 3));
  }
  CHECK_FALSE(rule_reflection(1, 3).has_value());
  CHECK(rule_reflection(-1, 3).has_value());
  CHECK_FALSE(rule_reflection3(2, 1, 3).has_value());
  CHECK_THROWS_AS(rule_repeated(1, 2), PreconditionError);
}

TEST_CASE("repeated barred arguments") {
  for (int r = 1; r <= 5; ++r) {
    LinComb zb = Z({-r});
    INFO("r=" << r);
    CHECK(rule_repeated_bar(r, 1) == zb);
    CHECK(rule_repeated_bar(r, 2) == Rational(-1, 2) * Z({2 * r}) + Rational(1, 2) * zb * zb);
    CHECK(rule_repeated_bar(r, 3) ==
          Rational(1, 3) * Z({-3 * r}) - Rational(1, 2) * (zb * Z({2 * r})) + Rational(1, 6) * pow(zb, 3));
    CHECK(rule_repeated_bar(r, 4) == Rational(-1, 4) * Z({4 * r}) + Rational(1, 3) * (zb * Z({-3 * r})) +
                                         Rational(1, 8) * pow(Z({2 * r}), 2) -
                                         Rational(1, 4) * (Z({2 * r}) * zb * zb) + Rational(1, 24) * pow(zb, 4));
  }
}

TEST_CASE("alternating depth one") {
  CHECK(rule_alt_depth1(MzvAtom::zeta({-2})) == Rational(-1, 2) * Z({2}));
  CHECK(rule_alt_depth1(MzvAtom::zeta({-5})) == Rational(-15, 16) * Z({5}));
  CHECK_THROWS_AS(rule_alt_depth1(MzvAtom::zeta({-1})), PreconditionError);
  CHECK(reduced(Z({-1})) == Z({-1}));
  CHECK(reduced(Z({-2})) == Rational(-1, 2) * Z({2}));
}

TEST_CASE("even zeta products") {
  CHECK(collapse_even_zetas(P("z(2)^2")) == P("5/2*z(4)"));
  CHECK(collapse_even_zetas(P("z(2)*z(4)")) == P("7/4*z(6)"));
  CHECK(collapse_even_zetas(P("z(2)^3*z(3)")) == P("35/8*z(3)*z(6)"));
  CHECK(collapse_even_zetas(P("z(2)*z(3)")) == P("z(2)*z(3)"));
}

TEST_CASE("symmetric triple through Euler sums") {
  for (int k = 2; k <= 6; ++k)
    for (int i = 1; i <= 3; ++i)
      for (int j = i; j <= 3; ++j) {
        INFO(i << "," << j << "," << k);
        CHECK(rule_symmetric_triple(i, j, k).resolve() == Z({k, i, j}) + Z({k, j, i}));
      }
  auto rel = rule_symmetric_triple(1, 2, 3);
  CHECK(rel.render() == "S(1,2,3) - S(1,5) - S(2,4) - S(3,3) + 2*z(6)");
  Real value = 0;
  Real bound = 0;
  for (const auto& [idx, c] : rel.sums) {
    auto r = eval_euler_sum(idx, 1e-10);
    value += Real(c) * r.value;
    bound += abs(Real(c)) * r.tail_bound;
  }
  auto rest = eval_lincomb(rel.rest, 1e-12);
  auto lhs = eval_lincomb(Z({3, 1, 2}) + Z({3, 2, 1}), 1e-12);
  CHECK(abs(value + rest.value - lhs.value) <= bound + Real(1e-8));
  // S_{1^3,q} = 3 S_{12,q} - 2 S_{3,q} + 6 zeta(q,1,1,1) + 6 zeta(q+1,1,1)
  for (int q = 2; q <= 8; ++q) {
    std::string sq = std::to_string(q);
    INFO("q=" << q);
    CHECK(S("S(1,1,1," + sq + ")") == Rational(3) * S("S(1,2," + sq + ")") - Rational(2) * S("S(3," + sq + ")") +
                                          Rational(6) * Z({q, 1, 1, 1}) + Rational(6) * Z({q + 1, 1, 1}));
  }
  CHECK_THROWS_AS(rule_symmetric_triple(2, 1, 3), PreconditionError);
  CHECK_THROWS_AS(rule_symmetric_triple(1, 1, 1), PreconditionError);
}

TEST_CASE("closed forms of power sums after reduction") {
  for (int r = 2; r <= 5; ++r) {
    std::string rs = std::to_string(r), r2 = std::to_string(2 * r), r3 = std::to_string(3 * r);
    INFO("r=" << r);
    LinComb rrr = S("S(" + rs + "," + rs + "," + rs + ")") -
                  (Rational(1, 3) * pow(Z({r}), 3) - Rational(1, 3) * Z({3 * r}) + S("S(" + rs + "," + r2 + ")"));
    CHECK(reduced(rrr).empty());
    LinComb rrrr = S("S(" + rs + "," + rs + "," + rs + "," + rs + ")") -
                   (Rational(1, 4) * pow(Z({r}), 4) + Rational(3, 4) * pow(Z({2 * r}), 2) + Z({4 * r}) -
                    S("S(" + rs + "," + r3 + ")") + Rational(3, 2) * S("S(" + rs + "," + rs + "," + r2 + ")") -
                    Rational(3, 2) * S("S(" + r2 + "," + r2 + ")"));
    CHECK(reduced(rrrr).empty());
  }
  for (int r = 1; r <= 5; ++r) {
    std::string rb = "-" + std::to_string(r);
    INFO("r=" << r);
    LinComb asr = S("S(" + rb + "," + rb + "," + rb + ")") -
                  (S("S(" + rb + "," + std::to_string(2 * r) + ")") +
                   Rational(1, 3) * (Z({-3 * r}) - pow(Z({-r}), 3)));
    CHECK(reduced(asr).empty());
  }
}

TEST_CASE("fully reduced alternating examples") {
  CHECK(reduced(S("S(-1,-1,-1)")) == reduced(P("-1/2*z(3) + 3/2*z(2)*ln2 + 1/3*ln2^3")));
  CHECK(reduced(S("S(-3,-3,-3)")) ==
        reduced(P("-7111/512*z(9) + 561/128*z(2)*z(7) + 189/128*z(3)*z(6) + 315/64*z(4)*z(5) + 9/64*z(3)^3")));
  auto r = reduce(S("S(8,9)"));
  CHECK(r.unresolved.empty());
  CHECK(r.value.homogeneous_weight() == 17);
}

TEST_CASE("partial reductions agree numerically with known closed forms") {
  auto r = reduce(S("S(1,1,1,9)"));
  CHECK(r.value.homogeneous_weight() == 12);
  LinComb closed = P("1060345/22112*z(12) - 35*z(3)*z(9) - 33*z(5)*z(7) + 3*z(2)*z(3)*z(7) + 3/2*z(2)*z(5)^2 "
                     "+ 21/4*z(6)*z(3)^2 + 15/2*z(3)*z(4)*z(5) - 1/4*z(3)^4") +
                   Rational(15, 4) * S("S(2,10)");
  CHECK(numerically_equal(r.value, closed, 1e-6));
  auto s = reduce(S("S(5,-1)"));
  CHECK(numerically_equal(s.value, P("111/64*z(6) - 15/16*z(5)*ln2 - 9/32*z(3)^2"), 1e-8));
  CHECK(s.unresolved == std::vector<MzvAtom>{MzvAtom::zeta({-1, 5})});
}

TEST_CASE("trace and weight homogeneity") {
  auto r = reduce(S("S(1,2,3)"));
  CHECK_FALSE(r.trace.empty());
  CHECK_FALSE(r.trace_truncated);
  std::vector<std::string> names;
  for (const auto& s : r.trace) names.push_back(s.rule);
  CHECK(std::find(names.begin(), names.end(), "zeta-k1l") != names.end());
  CHECK(r.value.homogeneous_weight() == 6);
  CHECK(reduce(LinComb{}).value.empty());
  CHECK(reduce(C(3, 2)).value == C(3, 2));
}

TEST_CASE("reduction is idempotent and independent of rule order") {
  gen::Rng rng(71);
  Ruleset reversed = default_ruleset();
  std::reverse(reversed.begin(), reversed.end());
  for (int i = 0; i < 150; ++i) {
    LinComb x;
    if (i % 2 == 0) {
      x = gen::lincomb(rng, 4);
    } else {
      auto idx = gen::index(rng, 3, 4);
      if (idx.weight() > 10) continue;
      x = expand_theorem1(idx);
    }
    auto once = reduce(x);
    INFO(render_plain(x));
    REQUIRE(reduce(once.value).value == once.value);
    REQUIRE(reduce(x, {}, reversed).value == once.value);
  }
}

TEST_CASE("identity tables take priority") {
  IdentityTable t;
  t.source = "test";
  t.insert(MzvAtom::zeta({6, 2}), P("z(8) - z(2)*z(6)"));
  auto r = reduce(Z({6, 2}) + Z({4}), {t});
  CHECK(r.value == collapsed(P("z(8) - z(2)*z(6) + z(4)")));
  CHECK(r.trace.front().rule == "table:test");
  // a cycle through two entries stops instead of looping
  IdentityTable loop;
  loop.insert(MzvAtom::zeta({5, 3}), Z({3, 5}));
  loop.insert(MzvAtom::zeta({3, 5}), Z({5, 3}));
  auto c = reduce(Z({5, 3}), {loop});
  CHECK(c.value.size() == 1);
  CHECK_THROWS_AS(t.insert(MzvAtom::zeta({3, 1}), P("z(3)")), TableError);
  CHECK_THROWS_AS(t.insert(MzvAtom::zeta({3, 1}), P("z(3,1) - z(4)")), TableError);
}

TEST_CASE("identity table files") {
  std::istringstream good(R"j({"lhs": "z(2,1)", "rhs": [{"factors": ["z(3)"], "coeff": "1"}], "weight": 3})j");
  auto ok = load_identity_table(good, {"mem", true, 1e-8});
  CHECK(ok.rejected.empty());
  CHECK(ok.table.entries.size() == 1);

  std::istringstream bad(R"j({"lhs": "z(2,1)", "rhs": [{"factors": ["z(3)"], "coeff": "2"}], "weight": 3})j");
  auto no = load_identity_table(bad, {"mem", true, 1e-8});
  CHECK(no.rejected.size() == 1);
  CHECK(no.table.entries.empty());
  std::istringstream unverified(R"j({"lhs": "z(2,1)", "rhs": [{"factors": ["z(3)"], "coeff": "2"}]})j");
  CHECK(load_identity_table(unverified).table.entries.size() == 1);

  std::istringstream empty("");
  auto e = load_identity_table(empty);
  CHECK(e.table.entries.empty());
  CHECK(e.rejected.empty());
  CHECK(reduce(Z({3, 1}), {e.table}).value == Rational(1, 4) * Z({4}));

  std::istringstream mixed("not json\n"
                           R"j({"lhs": "z(3,1)", "rhs": [{"factors": ["z(3)"], "coeff": "1"}]})j"
                           "\n\n"
                           R"j({"lhs": "z(3,1)", "rhs": [{"factors": ["z(4)"], "coeff": "1/4"}], "weight": 4})j");
  auto m = load_identity_table(mixed);
  REQUIRE(m.rejected.size() == 2);
  CHECK(m.rejected[0].line == 1);
  CHECK(m.rejected[1].line == 2);
  CHECK(m.table.entries.size() == 1);
  CHECK(m.table.max_weight == 4);

  std::ostringstream out;
  write_identity_table(out, m.table);
  std::istringstream back(out.str());
  auto again = load_identity_table(back);
  CHECK(again.table.entries == m.table.entries);
  CHECK_THROWS_AS(load_identity_table_file("/nonexistent/table.jsonl"), TableError);
}

TEST_CASE("rule soundness on random samples") {
  gen::Rng rng(72);
  auto tally = soundness::check_rules(rng, 50, 1e-8);
  CHECK(tally.size() == 8);
  for (const auto& [rule, t] : tally) {
    INFO(rule << ": " << t.first_failure);
    CHECK(t.total == 50);
    CHECK(t.passed == t.total);
  }
}
