#include "resdist/wellformed.hpp"

#include "doctest.h"
#include "resdist/parser.hpp"
#include "support/programs.hpp"

using namespace resdist;

TEST_CASE("paper programs are well-formed") {
  for (const char* src : {testdata::kMatrixIr, testdata::kAddIr, testdata::kSum4Ir,
                          testdata::kMontyIr, testdata::kDepAddIr}) {
    CAPTURE(src);
    CHECK(check_well_formed(parse_program(src)).empty());
  }
}

TEST_CASE("unguarded self call is not tail recursion") {
  Program p = parse_program("f(x) = f(x+1)");
  auto ds = check_well_formed(p);
  REQUIRE(!ds.empty());
  CHECK(ds[0].kind == ErrKind::NonTailRecursion);
  CHECK(ds[0].where == "f");
}

TEST_CASE("mutual recursion is rejected") {
  Program p = parse_program("f(x) = g(x)\ng(x) = f(x)");
  auto ds = check_well_formed(p);
  REQUIRE(!ds.empty());
  CHECK(ds[0].kind == ErrKind::MutualRecursion);
}

TEST_CASE("calls must target lower indices") {
  // for3 calling for2 inverts the Fig-4 enumeration
  Program p = parse_program(
      "for2(i2,step,n) = if(i2>=n) then step else for2(i2+1,for3(0,step+2,n),n)\n"
      "for3(i3,step,n) = if(i3>=n) then step else for3(i3+1,step+1,n)\n");
  auto ds = check_well_formed(p);
  REQUIRE(!ds.empty());
  CHECK(ds[0].kind == ErrKind::ForwardCall);
  CHECK(ds[0].where == "for2");
}

TEST_CASE("self call hidden in a branch is rejected") {
  Program p = parse_program("f(x) = if x =< 0 then f(x-1) else f(x-1)");
  auto ds = check_well_formed(p);
  REQUIRE(!ds.empty());
  CHECK(ds[0].kind == ErrKind::NonTailRecursion);
}

TEST_CASE("recursion_shape decomposes shape 1") {
  Program p = parse_program(testdata::kAddIr);
  auto shape = recursion_shape(*p.find_func("add"));
  REQUIRE(shape);
  CHECK(shape->rec_args.size() == 2);
  CHECK(!recursion_shape(*parse_program(testdata::kSum4Ir).find_func("sum4")));
}

TEST_CASE("arity mismatches are reported") {
  Program p = parse_program("g(x) = x\nf(x) = g(x,x)");
  auto ds = check_well_formed(p);
  REQUIRE(!ds.empty());
  CHECK(ds[0].kind == ErrKind::ArityMismatch);
}
