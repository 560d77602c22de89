#include "resdist/parser.hpp"

#include "doctest.h"
#include "resdist/printer.hpp"
#include "support/programs.hpp"

using namespace resdist;

TEST_CASE("parses the matrix intermediate program") {
  Program p = parse_program(testdata::kMatrixIr);
  REQUIRE(p.funcs.size() == 4);
  CHECK(p.funcs[0].name == "for3");
  CHECK(p.funcs[3].name == "tmulta");
  CHECK(p.funcs[3].index == 4);
  REQUIRE(p.probs.size() == 1);
  CHECK(p.params == std::set<std::string>{"n"});

  // if(i3>=n) is the guard n =< i3
  auto* body = as_if(p.funcs[0].body);
  REQUIRE(body);
  auto* le = std::get_if<BExpNode::Le>(&body->cond->v);
  REQUIRE(le);
  CHECK(print(body->cond) == "n =< i3");
}

TEST_CASE("q-level division of literals folds to a rational constant") {
  QExp q = parse_qexp("c(1=<x)*c(x=<6)*1/6");
  auto* m = as_qbin(q);
  REQUIRE(m);
  CHECK(as_qconst(m->rhs));
  CHECK(as_qconst(m->rhs)->value == Rational(1, 6));
}

TEST_CASE("i2r keeps integer division distinct from real division") {
  QExp real_div = parse_qexp("x/10");
  CHECK(as_qbin(real_div));
  QExp int_div = parse_qexp("i2r(x/10)");
  REQUIRE(as_i2r(int_div));
  CHECK(as_bin(as_i2r(int_div)->a)->op == AOp::Div);
}

TEST_CASE("print/parse round trip is stable") {
  for (const char* src : {testdata::kMatrixIr, testdata::kAddIr, testdata::kSum4Ir,
                          testdata::kMontyIr, testdata::kDepAddIr}) {
    Program p1 = parse_program(src);
    Program p2 = parse_program(print(p1));
    REQUIRE(p1.funcs.size() == p2.funcs.size());
    REQUIRE(p1.probs.size() == p2.probs.size());
    for (size_t i = 0; i < p1.funcs.size(); ++i) CHECK(equal(p1.funcs[i].body, p2.funcs[i].body));
    for (size_t i = 0; i < p1.probs.size(); ++i) CHECK(equal(p1.probs[i].body, p2.probs[i].body));
  }
}

TEST_CASE("qexp expressions round trip") {
  for (const char* src :
       {"sum(x, c(1=<x)*c(x=<4)*i2r(x)/i2r(10))", "prod(j, c(0=<j)*c(j=<i-1), c(not(x = 0)))",
        "c(z = argDev(x,x-2,j))", "c(out = if x=<0 then y else add(x-1,y+1))",
        "1/18*c(1=<guess)", "min(a,b)+max(a,b) - 3", testdata::kAddClosedForm}) {
    QExp q1 = parse_qexp(src);
    QExp q2 = parse_qexp(print(q1));
    CAPTURE(src);
    CHECK(equal(q1, q2));
  }
}

TEST_CASE("c(a and b) prints as a product of c-terms") {
  QExp q = mk::c(mk::band(parse_bexp("1 =< x"), parse_bexp("x =< n")));
  CHECK(print(q) == "c(1 =< x)*c(x =< n)");
  CHECK(equal(parse_qexp(print(q)), parse_qexp("c(1=<x)*c(x=<n)")));
}

TEST_CASE("syntax errors carry location") {
  CHECK_THROWS_WITH_AS(parse_program("f(x) = )"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_AS(parse_program("f(x) = y"), Error);                 // undefined name
  CHECK_THROWS_AS(parse_program("P(x) = sum(n, c(n = x))\nPy(y) = n"), Error);  // param used as binder
}

TEST_CASE("comparison sugar") {
  CHECK(print(parse_bexp("a >= b")) == "b =< a");
  CHECK(print(parse_bexp("a > b")) == "b < a");
  CHECK(print(parse_bexp("a <= b")) == "a =< b");
}
