#ifndef RESDIST_TESTS_GEN_HPP
#define RESDIST_TESTS_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "resdist/ast.hpp"

namespace resdist::testgen {

// Small random terms over a fixed variable pool, for property tests.
struct TermGen {
  std::mt19937 rng;
  std::vector<std::string> vars;

  explicit TermGen(unsigned seed, std::vector<std::string> vs = {"x", "y", "z"})
      : rng(seed), vars(std::move(vs)) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
  Int small_int() { return Int(pick(9) - 4); }
  std::string var() { return vars[pick(static_cast<int>(vars.size()))]; }

  AExp aexp(int depth) {
    if (depth <= 0 || pick(3) == 0) return pick(2) ? mk::var(var()) : mk::cint(small_int());
    switch (pick(4)) {
      case 0: return mk::add(aexp(depth - 1), aexp(depth - 1));
      case 1: return mk::sub(aexp(depth - 1), aexp(depth - 1));
      case 2: return mk::mul(aexp(depth - 1), aexp(depth - 1));
      default: return mk::amin(aexp(depth - 1), aexp(depth - 1));
    }
  }

  BExp bexp(int depth) {
    switch (pick(depth <= 0 ? 3 : 5)) {
      case 0: return mk::eq_a(aexp(depth - 1), aexp(depth - 1));
      case 1: return mk::le(aexp(depth - 1), aexp(depth - 1));
      case 2: return mk::lt(aexp(depth - 1), aexp(depth - 1));
      case 3: return mk::bnot(bexp(depth - 1));
      default: return mk::band(bexp(depth - 1), bexp(depth - 1));
    }
  }

  // QExps whose sums carry explicit bounds so they stay evaluable.
  QExp qexp(int depth) {
    if (depth <= 0 || pick(4) == 0) {
      switch (pick(3)) {
        case 0: return mk::qconst(Rational(small_int(), 1 + pick(6)));
        case 1: return mk::i2r(aexp(1));
        default: return mk::c(bexp(1));
      }
    }
    switch (pick(5)) {
      case 0: return mk::qadd(qexp(depth - 1), qexp(depth - 1));
      case 1: return mk::qsub(qexp(depth - 1), qexp(depth - 1));
      case 2: return mk::qmul(qexp(depth - 1), qexp(depth - 1));
      case 3: {
        std::string v = "s" + std::to_string(pick(3));
        Int lo = small_int();
        QExp bounds = mk::qmul(mk::c(mk::le(mk::cint(lo), mk::var(v))),
                               mk::c(mk::le(mk::var(v), mk::cint(lo + 1 + pick(4)))));
        return mk::sum(v, mk::qmul(bounds, qexp(depth - 1)));
      }
      default: {
        std::string v = "t" + std::to_string(pick(3));
        Int lo = small_int();
        QExp guard = mk::qmul(mk::c(mk::le(mk::cint(lo), mk::var(v))),
                              mk::c(mk::le(mk::var(v), mk::cint(lo + pick(3)))));
        return mk::prod(v, guard, mk::c(bexp(1)));
      }
    }
  }
};

}  // namespace resdist::testgen

#endif
