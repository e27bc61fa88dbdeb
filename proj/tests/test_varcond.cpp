#include "doctest.h"

#include "epskit/parse.hpp"
#include "epskit/varcond.hpp"

using namespace epskit;

namespace {

VariableId g(const std::string& n) { return VariableId{n, VarKind::Gamma, base_type("i"), 0}; }
VariableId dm(const std::string& n) {
  return VariableId{n, VarKind::DeltaMinus, base_type("i"), 0};
}
VariableId dp(const std::string& n) {
  return VariableId{n, VarKind::DeltaPlus, base_type("i"), 0};
}

}  // namespace

TEST_CASE("acyclicity and deterministic cycle reporting") {
  VarCond r;
  r.add(g("a"), g("b"));
  r.add(g("b"), g("c"));
  CHECK(is_acyclic(r));
  CHECK(!find_cycle(r).has_value());

  r.add(g("c"), g("a"));
  CHECK(!is_acyclic(r));
  auto cycle = find_cycle(r);
  REQUIRE(cycle.has_value());
  CHECK(cycle_string(*cycle) == "a^g -> b^g -> c^g -> a^g");
}

TEST_CASE("self edges are cycles") {
  VarCond r;
  r.add(g("a"), g("a"));
  auto cycle = find_cycle(r);
  REQUIRE(cycle.has_value());
  CHECK(cycle_string(*cycle) == "a^g -> a^g");
}

TEST_CASE("reachability is reflexive and follows edges backwards") {
  VarCond r;
  r.add(g("a"), g("b"));
  r.add(g("b"), g("c"));
  r.add(g("d"), g("e"));
  auto into = reachable_into(r, {g("c")});
  CHECK(into.count(g("a")) == 1);
  CHECK(into.count(g("b")) == 1);
  CHECK(into.count(g("c")) == 1);
  CHECK(into.count(g("d")) == 0);
}

TEST_CASE("sigma update adds range-to-domain edges") {
  Signature sig;
  sig.declare_sort("i");
  sig.declare_const("f", Type{{base_type("i")}, "i"});
  FreeVarTable frees;
  frees.declare(g("x"));
  frees.declare(dm("u"));

  SubstitutionMap s;
  s.entries[g("x")] = parse_expr("f(u^d-)", sig, frees);
  VarCond r;
  VarCond r2 = sigma_update(r, s);
  CHECK(r2.edges.count({dm("u"), g("x")}) == 1);
}

TEST_CASE("substitution admissibility") {
  Signature sig;
  sig.declare_sort("i");
  sig.declare_const("c", base_type("i"));
  FreeVarTable frees;
  frees.declare(g("x"));
  frees.declare(dm("u"));
  frees.declare(dp("y"));

  VarCond r;
  std::string diag;

  SubstitutionMap ok;
  ok.entries[g("x")] = parse_expr("c", sig, frees);
  CHECK(is_r_substitution(r, ok, &diag));

  // weak universal variables are never substituted for
  SubstitutionMap weak;
  weak.entries[dm("u")] = parse_expr("c", sig, frees);
  CHECK(!is_r_substitution(r, weak, &diag));
  CHECK(diag.find("u^d-") != std::string::npos);

  // an edge (y, x) plus sigma mapping y to a term over x closes a loop
  VarCond below;
  below.add(dp("y"), g("x"));
  SubstitutionMap looping;
  looping.entries[dp("y")] = parse_expr("x^g", sig, frees);
  CHECK(!is_r_substitution(below, looping, &diag));
  CHECK(diag.find("cycle") != std::string::npos);
}
