#include "resdist/symbolic.hpp"

#include <random>

#include "doctest.h"
#include "resdist/eval.hpp"
#include "resdist/parser.hpp"
#include "resdist/printer.hpp"

using namespace resdist;

namespace {

Int eval_at(const AExp& e, const ValueEnv& binding) {
  return eval_exp_term(Program{}, mk::a(e), binding, {});
}

}  // namespace

TEST_CASE("polynomial normal form is canonical and exact") {
  AExp a = parse_aexp("(x+1)*(x-1)");
  AExp b = parse_aexp("x*x - 1");
  CHECK(equal(normalize_aexp(a), normalize_aexp(b)));
  CHECK(print(normalize_aexp(a)) == "-1+x*x");

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int i = 0; i < 100; ++i) {
    ValueEnv env{{"x", d(rng)}, {"n", d(rng)}};
    AExp e = parse_aexp("(x+n)*(x-2*n)+n*n - x*(n-1)");
    CHECK(eval_at(e, env) == eval_at(normalize_aexp(e), env));
  }
}

TEST_CASE("integer division becomes an opaque atom unless it cancels") {
  CHECK(print(normalize_aexp(parse_aexp("(4*x+2)/2"))) == "1+2*x");
  CHECK(print(normalize_aexp(parse_aexp("(2*x+1)/2"))) == "(1+2*x)/2");
  // atoms are canonicalized inside: x+x inside a division normalizes to 2*x
  CHECK(equal(normalize_aexp(parse_aexp("(x+x+1)/2")), normalize_aexp(parse_aexp("(2*x+1)/2"))));
  CHECK_THROWS_AS(normalize_aexp(parse_aexp("x/0")), Error);
}

TEST_CASE("expand") {
  Polynomial p = expand(parse_aexp("(x+1)*(x-1)"), "x");
  REQUIRE(p.degree() == 2);
  CHECK(print(p.coeffs[0]) == "-1");
  CHECK(print(p.coeffs[1]) == "0");
  CHECK(print(p.coeffs[2]) == "1");

  // n*x + x*x in x -> [0, n, 1]; checked against evaluation at random points
  Polynomial q = expand(parse_aexp("n*x + x*x"), "x");
  REQUIRE(q.degree() == 2);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> d(-10, 10);
  for (int i = 0; i < 20; ++i) {
    ValueEnv env{{"x", d(rng)}, {"n", d(rng)}};
    Int horner = 0;
    for (int k = q.degree(); k >= 0; --k) horner = horner * env["x"] + eval_at(q.coeffs[k], env);
    CHECK(horner == eval_at(parse_aexp("n*x + x*x"), env));
  }

  CHECK_THROWS_AS(expand(parse_aexp("1/x"), "x"), Error);
  try {
    expand(parse_aexp("1/x"), "x");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::NotPolynomial);
  }
}

TEST_CASE("solve_linear") {
  // x + 3 = out
  LinearSolution s1 = solve_linear(parse_aexp("x+3"), parse_aexp("out"), "x");
  CHECK(print(s1.value) == "-3+out");
  CHECK(std::holds_alternative<BExpNode::True>(s1.condition->v));

  // 2*x = out needs a divisibility condition
  LinearSolution s2 = solve_linear(parse_aexp("2*x"), parse_aexp("out"), "x");
  CHECK(print(s2.value) == "out/2");
  CHECK(print(s2.condition) == "out/2*2 = out");

  CHECK_THROWS_AS(solve_linear(parse_aexp("0*x"), parse_aexp("5"), "x"), Error);
  try {
    solve_linear(parse_aexp("0*x"), parse_aexp("5"), "x");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::ZeroCoefficient);
  }
  CHECK_THROWS_AS(solve_linear(parse_aexp("x*x"), parse_aexp("4"), "x"), Error);

  // solution and condition agree with brute force on random groundings:
  // a*x + b = out has an integer solution iff the condition holds, and then
  // the solved value satisfies the equation
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-12, 12);
  for (int i = 0; i < 200; ++i) {
    int a = d(rng);
    if (a == 0) continue;
    int b = d(rng);
    AExp lhs = mk::add(mk::mul(mk::cint(a), mk::var("x")), mk::cint(b));
    AExp rhs = mk::var("out");
    LinearSolution s = solve_linear(lhs, rhs, "x");
    Int out = d(rng);
    ValueEnv env{{"out", out}};
    bool cond = eval_bexp_term(Program{}, s.condition, env, {});
    bool solvable = (out - b) % a == 0;
    CHECK(cond == solvable);
    if (cond) {
      ValueEnv e2 = env;
      e2["x"] = eval_at(s.value, env);
      CHECK(eval_at(lhs, e2) == out);
    }
  }
}

TEST_CASE("reduce_bexp") {
  CHECK(print(reduce_bexp(parse_bexp("3 =< 5"))) == "true");
  CHECK(print(reduce_bexp(parse_bexp("x =< 2 and 5 =< x"))) == "false");
  CHECK(print(reduce_bexp(parse_bexp("x =< 2 and x =< 5"))) == "x =< 2");
  CHECK(print(reduce_bexp(parse_bexp("x < y"))) == "x =< -1+y");
  CHECK(print(reduce_bexp(parse_bexp("not(x =< 2)"))) == "3 =< x");
  // opposing bounds become an equation
  CHECK(print(reduce_bexp(parse_bexp("x =< y and y =< x"))) == "x = y");
  // incomparable bounds merge via min
  CHECK(print(reduce_bexp(parse_bexp("x =< n and x =< m"))) == "x =< min(n,m)");
  // parameters stay symbolic (Fig-5 style guards remain)
  BExp fig5 = parse_bexp("3 =< out/(n*n) and out/(n*n) =< 2+n");
  CHECK(print(reduce_bexp(fig5)) != "false");
  CHECK(print(reduce_bexp(fig5)) != "true");
}

TEST_CASE("reduce_bexp preserves truth on random groundings") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> d(-6, 6);
  const char* formulas[] = {
      "x =< y and y =< z and z =< x",
      "not(x < y) and x =< y",
      "2*x =< y and not(y =< 4)",
      "x = y+1 and y = z-2",
      "x/2 =< y and y =< x/2",
  };
  for (const char* f : formulas) {
    BExp b = parse_bexp(f);
    BExp r = reduce_bexp(b);
    for (int i = 0; i < 200; ++i) {
      ValueEnv env{{"x", d(rng)}, {"y", d(rng)}, {"z", d(rng)}};
      CAPTURE(f);
      CHECK(eval_bexp_term(Program{}, b, env, {}) == eval_bexp_term(Program{}, r, env, {}));
    }
  }
}

TEST_CASE("bernoulli numbers") {
  const auto& b = bernoulli_numbers();
  CHECK(b[0] == Rational(1));
  CHECK(b[1] == Rational(1, 2));
  CHECK(b[2] == Rational(1, 6));
  CHECK(b[3] == Rational(0));
  CHECK(b[4] == Rational(-1, 30));
  CHECK(b[10] == Rational(5, 66));
}

TEST_CASE("power sums match brute force for all degrees") {
  // sum(k=1..n) k^2 = n(n+1)(2n+1)/6
  AExp s2 = power_sum(2, mk::cint(1), mk::var("n"));
  for (int n = 0; n <= 20; ++n)
    CHECK(eval_at(s2, {{"n", n}}) == Int(n) * (n + 1) * (2 * n + 1) / 6);

  CHECK(eval_at(power_sum(1, mk::cint(1), mk::cint(4)), {}) == 10);
  CHECK(eval_at(power_sum(0, mk::cint(5), mk::cint(3)), {}) == 0);  // empty range

  for (int p = 0; p <= 10; ++p) {
    AExp s = power_sum(p, mk::cint(1), mk::var("n"));
    for (int n = 1; n <= 20; ++n) {
      Int direct = 0;
      for (Int k = 1; k <= n; ++k) {
        Int pw = 1;
        for (int j = 0; j < p; ++j) pw *= k;
        direct += pw;
      }
      CAPTURE(p);
      CAPTURE(n);
      CHECK(eval_at(s, {{"n", n}}) == direct);
    }
  }

  // negative lower limits telescope correctly as well
  AExp s3 = power_sum(3, mk::cint(-2), mk::cint(4));
  CHECK(eval_at(s3, {}) == Int(-8) + -1 + 0 + 1 + 8 + 27 + 64);

  CHECK_THROWS_AS(power_sum(11, mk::cint(1), mk::cint(5)), Error);
}

TEST_CASE("sum_polynomial") {
  Polynomial linear{"x", {mk::cint(0), mk::cint(1)}};  // x
  AExp s = sum_polynomial(linear, mk::cint(1), mk::var("n"));
  for (int n = 1; n <= 10; ++n) CHECK(eval_at(s, {{"n", n}}) == Int(n) * (n + 1) / 2);

  // constant summand out-1 over [1, out-1] gives (out-1)^2
  Polynomial c{"x", {parse_aexp("out-1")}};
  AExp sq = sum_polynomial(c, mk::cint(1), parse_aexp("out-1"));
  for (int out = 2; out <= 10; ++out)
    CHECK(eval_at(sq, {{"out", out}}) == Int(out - 1) * (out - 1));

  CHECK(print(sum_polynomial(linear, mk::cint(5), mk::cint(3))) == "0");
}

TEST_CASE("qexp arithmetic with rational coefficients") {
  auto p = qexp_arith_to_poly(parse_qexp("(out-1)*(1/20)"));
  REQUIRE(p);
  CHECK(print(p->to_qexp()) == "1/20*i2r(-1+out)");
  CHECK(!qexp_arith_to_poly(parse_qexp("1/n")));           // symbolic denominator
  CHECK(!qexp_arith_to_poly(parse_qexp("c(x =< 2)")));     // indicator
}
