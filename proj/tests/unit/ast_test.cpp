#include "resdist/ast.hpp"

#include "doctest.h"
#include "support/gen.hpp"

using namespace resdist;

TEST_CASE("free variables") {
  CHECK(free_vars(mk::add(mk::var("x"), mk::var("y"))) == NameSet{"x", "y"});
  CHECK(free_vars(mk::cint(5)).empty());
  QExp s = mk::sum("x", mk::c(mk::eq(mk::var("x"), mk::evar("y"))));
  CHECK(free_vars(s) == NameSet{"y"});
  QExp p = mk::prod("t", mk::c(mk::le(mk::var("a"), mk::var("t"))), mk::c(mk::le(mk::var("t"), mk::var("b"))));
  CHECK(free_vars(p) == NameSet{"a", "b"});
}

TEST_CASE("substitution basics") {
  AExp e = mk::add(mk::var("x"), mk::var("y"));
  CHECK(equal(substitute(e, subst1("x", mk::cint(3))), mk::add(mk::cint(3), mk::var("y"))));
  QExp q = mk::sum("x", mk::c(mk::eq(mk::var("x"), mk::evar("y"))));
  CHECK(equal(substitute(q, Subst{}), q));
}

TEST_CASE("substitution avoids capture") {
  // sum(x, c(x = y))[y/x] must rename the binder, not produce sum(x, c(x=x))
  QExp q = mk::sum("x", mk::c(mk::eq(mk::var("x"), mk::evar("y"))));
  QExp got = substitute(q, subst1("y", mk::var("x")));
  QExp bad = mk::sum("x", mk::c(mk::eq(mk::var("x"), mk::evar("x"))));
  QExp expect = mk::sum("x1", mk::c(mk::eq(mk::var("x1"), mk::evar("x"))));
  CHECK(!alpha_equal(got, bad));
  CHECK(alpha_equal(got, expect));
}

TEST_CASE("substitution into argDev slots renames only") {
  Exp d = mk::argdev("x", mk::a(mk::add(mk::var("x"), mk::cint(2))), "i");
  Exp got = substitute(d, subst1("x", mk::var("u")));
  CHECK(equal(got, mk::argdev("u", mk::a(mk::add(mk::var("u"), mk::cint(2))), "i")));
  CHECK_THROWS_AS(substitute(d, subst1("x", mk::cint(3))), Error);
}

TEST_CASE("rename round trip is alpha-identity") {
  testgen::TermGen gen(42);
  for (int i = 0; i < 150; ++i) {
    QExp e = gen.qexp(3);
    QExp there = substitute(e, subst1("x", mk::var("u")));
    QExp back = substitute(there, subst1("u", mk::var("x")));
    CAPTURE(i);
    CHECK(alpha_equal(e, back));
  }
}

TEST_CASE("alpha equivalence") {
  QExp a = mk::sum("x", mk::c(mk::le(mk::var("x"), mk::var("n"))));
  QExp b = mk::sum("y", mk::c(mk::le(mk::var("y"), mk::var("n"))));
  QExp c = mk::sum("y", mk::c(mk::le(mk::var("y"), mk::var("m"))));
  CHECK(alpha_equal(a, b));
  CHECK(!alpha_equal(a, c));
}
