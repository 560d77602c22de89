#include "resdist/eval.hpp"

#include <sstream>

#include "doctest.h"
#include "resdist/parser.hpp"
#include "resdist/printer.hpp"
#include "support/programs.hpp"

using namespace resdist;

namespace {

ParamEnv env_n(long n) {
  ParamEnv e;
  e.set("n", Rational(n));
  return e;
}

}  // namespace

TEST_CASE("matrix step counts match the specialization table") {
  Program p = parse_program(testdata::kMatrixIr);
  CHECK(eval_exp(p, "tmulta", {0, 1}, {}) == 3);
  CHECK(eval_exp(p, "tmulta", {0, 2}, {}) == 16);
  CHECK(eval_exp(p, "tmulta", {0, 3}, {}) == 45);
  CHECK(eval_exp(p, "tmulta", {0, 4}, {}) == 96);
  CHECK(eval_exp(p, "for3", {0, 0, 3}, {}) == 3);
}

TEST_CASE("tail recursion runs iteratively") {
  Program p = parse_program(testdata::kAddIr);
  CHECK(eval_exp(p, "add", {2, 3}, env_n(6)) == 5);
  // deep recursion must not overflow any stack
  CHECK(eval_exp(p, "add", {200000, 0}, env_n(6)) == 200000);
}

TEST_CASE("nontermination hits the step budget") {
  Program p = parse_program("f(x) = if x = 0 then 1 else f(x+1)");
  EvalOptions opt;
  opt.step_budget = 1000;
  CHECK_THROWS_AS(eval_exp(p, "f", {5}, {}, opt), Error);
  try {
    eval_exp(p, "f", {5}, {}, opt);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::NonTermination);
  }
}

TEST_CASE("division by zero is reported") {
  Program p = parse_program("f(x) = x/0");
  CHECK_THROWS_AS(eval_exp(p, "f", {1}, {}), Error);
}

TEST_CASE("qexp basics") {
  Program p = parse_program(testdata::kAddIr);
  CHECK(eval_qexp(p, parse_qexp("c(3 =< 5)"), {}, {}) == Rational(1));
  CHECK(eval_qexp(p, parse_qexp("c(5 =< 3)"), {}, {}) == Rational(0));
  CHECK(eval_qexp(p, parse_qexp("sum(x, c(1=<x)*c(x=<4)*i2r(x)/i2r(10))"), {}, {}) == Rational(1));
  // P(2) with the uniform 1..6 distribution
  Program p6 = parse_program("P(x) = c(1=<x)*c(x=<6)*1/6");
  CHECK(eval_prob(p6, "P", {2}, {}) == Rational(1, 6));
  CHECK(eval_prob(p6, "P", {9}, {}) == Rational(0));
}

TEST_CASE("prod semantics: empty range is 1, guard filters") {
  Program p;
  CHECK(eval_qexp(p, parse_qexp("prod(j, c(0=<j)*c(j=<-1), c(false))"), {}, {}) == Rational(1));
  CHECK(eval_qexp(p, parse_qexp("prod(j, c(0=<j)*c(j=<3), c(not(j = 5)))"), {}, {}) == Rational(1));
  CHECK(eval_qexp(p, parse_qexp("prod(j, c(0=<j)*c(j=<3), c(not(j = 2)))"), {}, {}) == Rational(0));
  CHECK(eval_qexp(p, parse_qexp("prod(j, c(0=<j)*c(j=<2), i2r(j+1))"), {}, {}) == Rational(6));
}

TEST_CASE("unbounded summation is an error, not a truncation") {
  Program p;
  CHECK_THROWS_AS(eval_qexp(p, parse_qexp("sum(x, c(0=<x)*1/2)"), {}, {}), Error);
  try {
    eval_qexp(p, parse_qexp("sum(x, c(x=<9)*1/2)"), {}, {});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrKind::UnboundedSummation);
  }
}

TEST_CASE("argDev evaluates by iterating the update") {
  Program p;
  ValueEnv binding{{"x", 7}, {"i", 3}};
  CHECK(eval_exp_term(p, parse_exp("argDev(x, x-2, i)"), binding, {}) == 1);
  CHECK(eval_exp_term(p, parse_exp("argDev(x, x+0, i)"), binding, {}) == 7);
  binding["i"] = 0;
  CHECK(eval_exp_term(p, parse_exp("argDev(x, x*2, i)"), binding, {}) == 7);
}

TEST_CASE("rational weight parameters flow through qexps") {
  Program p = parse_program(testdata::kMontyIr);
  ParamEnv env;
  env.set("p", Rational(3, 4));
  CHECK(eval_prob(p, "Pstrat", {1}, env) == Rational(3, 4));
  CHECK(eval_prob(p, "Pstrat", {0}, env) == Rational(1, 4));
  CHECK(eval_prob(p, "Pin", {1, 2, 3, 1}, env) == Rational(1, 18) * Rational(3, 4));
  CHECK(eval_prob(p, "Pin", {1, 2, 2, 1}, env) == Rational(0));  // price = empty
}

TEST_CASE("specialize folds ground parts") {
  Program p = parse_program(testdata::kAddIr);
  ProbDef d = specialize(p, "P", env_n(4));
  CHECK(print(d.body) == "c(1 =< x)*c(x =< 4)/4");
  ProbDef same = specialize(p, "P", {});
  CHECK(equal(same.body, p.find_prob("P")->body));
}

TEST_CASE("specialized Padd tabulates to the triangular distribution") {
  // closed form from the analysis of add with uniform 1..n inputs
  Program p = parse_program(std::string("Padd(out) = ") + testdata::kAddClosedForm);
  Distribution d = tabulate(p, "Padd", env_n(3), 0, 10);
  CHECK(d.support.size() == 5);
  CHECK(d.at(2) == Rational(1, 9));
  CHECK(d.at(3) == Rational(2, 9));
  CHECK(d.at(4) == Rational(3, 9));
  CHECK(d.at(5) == Rational(2, 9));
  CHECK(d.at(6) == Rational(1, 9));
  CHECK(d.mass == Rational(1));

  auto [lo, hi] = expected_value_bounds(d);
  CHECK(lo == Rational(4));
  CHECK(hi == Rational(4));
}

TEST_CASE("expected value bounds") {
  Distribution point;
  point.add(16, Rational(1));
  auto [lo, hi] = expected_value_bounds(point);
  CHECK(lo == Rational(16));
  CHECK(hi == Rational(16));

  Distribution over;
  over.kind = Distribution::Kind::OverApprox;
  over.add(0, Rational(1));
  over.add(1, Rational(1));
  auto [l2, h2] = expected_value_bounds(over);
  CHECK(l2 == Rational(0));
  CHECK(h2 == Rational(1));

  Distribution empty;
  CHECK_THROWS_AS(expected_value_bounds(empty), Error);
}

TEST_CASE("csv round trip") {
  Distribution d;
  d.kind = Distribution::Kind::Exact;
  d.add(3, Rational(1, 1296));
  d.add(14, Rational(146, 1296));
  std::ostringstream os;
  write_csv(d, os);
  CHECK(os.str().find("# mass=49/432 kind=Exact") == 0);
  std::istringstream is(os.str());
  Distribution back = read_csv(is);
  CHECK(back.support == d.support);
  CHECK(back.mass == d.mass);
  CHECK(back.kind == d.kind);
}

TEST_CASE("plot data format") {
  Distribution d;
  d.add(5, Rational(1, 3));
  std::ostringstream os;
  emit_plot_data(d, os);
  CHECK(os.str() == "z value\n5 0.333333333333\n");
}
