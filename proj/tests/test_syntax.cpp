#include "doctest.h"

#include "epskit/parse.hpp"

using namespace epskit;

namespace {

Signature sig_pq() {
  Signature sig;
  sig.declare_sort("i");
  sig.declare_const("P", Type{{base_type("i")}, kBoolSort});
  sig.declare_const("Q", Type{{base_type("i"), base_type("i")}, kBoolSort});
  sig.declare_const("f", Type{{base_type("i")}, "i"});
  sig.declare_const("c", base_type("i"));
  return sig;
}

}  // namespace

TEST_CASE("round trip through the printer") {
  Signature sig = sig_pq();
  FreeVarTable frees;
  frees.declare(VariableId{"x0", VarKind::Gamma, base_type("i"), 0});
  for (const char* text : {
           "P(c)",
           "P(f(c))",
           "~P(c)",
           "P(c) /\\ Q(c, f(c))",
           "P(c) \\/ ~P(c)",
           "P(c) -> Q(c, c)",
           "P(c) <-> P(c)",
           "c = f(c)",
           "c != f(c)",
           "all x:i. P(x)",
           "ex x:i. (P(x) -> all y:i. Q(x, y))",
           "ex! x:i. P(x)",
           "eps x:i. P(x) = c",
           "iota x:i. Q(x, x) = c",
           "P(x0^g)",
           "true",
           "false",
       }) {
    Ptr f = parse_formula(text, sig, frees);
    Ptr g = parse_formula(to_string(f), sig, frees);
    CHECK(alpha_equal(f, g));
  }
}

TEST_CASE("binder body extends right but stops at top-level implication") {
  Signature sig = sig_pq();
  FreeVarTable frees;
  Ptr a = parse_formula("all x:i. P(x) -> P(c)", sig, frees);
  CHECK(a->kind == Kind::Imp);
  Ptr b = parse_formula("all x:i. (P(x) -> P(c))", sig, frees);
  CHECK(b->kind == Kind::Forall);
}

TEST_CASE("parse errors carry positions and reasons") {
  Signature sig = sig_pq();
  FreeVarTable frees;
  CHECK_THROWS_AS(parse_formula("P(", sig, frees), ParseError);
  CHECK_THROWS_AS(parse_formula("P(c) /\\", sig, frees), ParseError);
  CHECK_THROWS_AS(parse_formula("all x. P(x)", sig, frees), ParseError);    // type required
  CHECK_THROWS_AS(parse_formula("P(unknown)", sig, frees), ParseError);
  CHECK_THROWS_AS(parse_formula("Q(c)", sig, frees), EpskitError);          // arity
  CHECK_THROWS_AS(parse_formula("f(c)", sig, frees), EpskitError);          // not a formula
}
