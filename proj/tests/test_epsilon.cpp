#include "doctest.h"

#include "epskit/epsilon.hpp"
#include "epskit/parse.hpp"

using namespace epskit;

namespace {

struct Fixture {
  Signature sig;
  FreeVarTable frees;

  Fixture() {
    sig.declare_sort("i");
    sig.declare_const("P", Type{{base_type("i")}, kBoolSort});
    sig.declare_const("Q", Type{{base_type("i"), base_type("i")}, kBoolSort});
    sig.declare_const("c", base_type("i"));
  }

  Ptr F(const std::string& t) { return parse_formula(t, sig, frees); }
};

// alternating prefix all/ex/... of length n over an n-ary predicate
Ptr prenex(int n) {
  Signature sig;
  sig.declare_sort("i");
  std::vector<Type> args(n, base_type("i"));
  sig.declare_const("P", Type{args, kBoolSort});
  std::string text;
  std::string apply = "P(";
  for (int k = 0; k < n; ++k) {
    std::string v = "x" + std::to_string(k);
    text += (k % 2 == 0 ? "all " : "ex ") + v + ":i. ";
    apply += (k ? ", " : "") + v;
  }
  FreeVarTable frees;
  return parse_formula(text + apply + ")", sig, frees);
}

}  // namespace

TEST_CASE("classical elimination grows one level short of doubling per quantifier") {
  for (int n = 1; n <= 4; ++n) {
    Ptr f = prenex(n);
    int steps_in = 0, steps_out = 0;
    Ptr inside = classical_qelim(f, QelimOrder::InsideOut, &steps_in);
    Ptr outside = classical_qelim(f, QelimOrder::OutsideIn, &steps_out);
    CHECK(nesting_depth(inside) == (1 << n) - 1);
    CHECK(nesting_depth(outside) == (1 << n) - 1);
    CHECK(steps_in == n);
    CHECK(steps_out == n);
    CHECK(to_string(inside) == to_string(outside));
  }
}

TEST_CASE("quantifier-free input is returned unchanged") {
  Fixture fx;
  Ptr f = fx.F("P(c) -> Q(c, c)");
  int steps = 0;
  Ptr out = classical_qelim(f, QelimOrder::InsideOut, &steps);
  CHECK(steps == 0);
  CHECK(alpha_equal(f, out));
}

TEST_CASE("subordinate choice terms are detected") {
  Fixture fx;
  Ptr sub = fx.F("Q(eps x:i. Q(x, eps y:i. Q(x, y)), c)");
  CHECK(subordinate_pairs(sub).size() == 1);

  // inner term closed: nested but not subordinate
  Ptr closed = fx.F("Q(eps x:i. Q(x, eps y:i. P(y)), c)");
  CHECK(subordinate_pairs(closed).empty());
}

TEST_CASE("choice-term elimination shares equal terms only when asked") {
  Fixture fx;
  Goals goals{{fx.F("P(eps x:i. P(x)) /\\ P(eps x:i. P(x))")}};
  ElimResult shared = eliminate_choice_terms(goals, CcPair{}, true);
  CHECK(shared.introduced.size() == 1);
  ElimResult split = eliminate_choice_terms(goals, CcPair{}, false);
  CHECK(split.introduced.size() == 2);

  // occurrences with different bodies never share
  Goals two{{fx.F("P(eps x:i. P(x)) /\\ P(eps y:i. Q(y, y))")}};
  CHECK(eliminate_choice_terms(two, CcPair{}, true).introduced.size() == 2);
}

TEST_CASE("elimination of a subordinate term yields one parametric entry") {
  Fixture fx;
  Goals goals{{fx.F("Q(eps x:i. Q(x, eps y:i. Q(x, y)), c)")}};
  ElimResult r = eliminate_choice_terms(goals, CcPair{}, true);
  REQUIRE(r.introduced.size() == 2);
  int nullary = 0, unary = 0;
  for (const auto& [y, abs] : r.pair.cc) {
    (void)y;
    if (abs.params.empty()) ++nullary;
    if (abs.params.size() == 1) ++unary;
  }
  CHECK(nullary == 1);
  CHECK(unary == 1);
  CHECK(nesting_depth(r.goals.at(0).at(0)) == 0);
  CHECK(validate_cc(r.pair).empty());
}

TEST_CASE("descriptions carry the uniqueness condition") {
  Fixture fx;
  Goals goals{{fx.F("P(iota x:i. P(x))")}};
  ElimResult r = eliminate_choice_terms(goals, CcPair{}, true);
  REQUIRE(r.introduced.size() == 1);
  const Abstraction& abs = r.pair.cc.begin()->second;
  CHECK(to_string(abs.body).find("ex!") != std::string::npos);
}

TEST_CASE("condition-based reduction never deepens the formula") {
  CcPair pair;
  for (int n = 1; n <= 4; ++n) {
    VcReduceResult r = vc_reduction(prenex(n), CcPair{});
    CHECK(nesting_depth(r.formula) == 0);
    CHECK(static_cast<int>(r.introduced.size()) == n);
    CHECK(free_vars(r.formula).size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("reduction records dependencies of weak variables on rigid ones") {
  VcReduceResult r = vc_reduction(prenex(2), CcPair{});  // all x0. ex x1. P
  REQUIRE(r.introduced.size() == 2);
  CHECK(r.introduced.at(0).kind == VarKind::DeltaMinus);
  CHECK(r.introduced.at(1).kind == VarKind::Gamma);
  CHECK(r.pair.vc.edges.empty());  // the rigid variable came second

  VcReduceResult r2 = vc_reduction(parse_formula("ex x:i. all y:i. x = y",
                                                 [] {
                                                   Signature s;
                                                   s.declare_sort("i");
                                                   return s;
                                                 }(),
                                                 FreeVarTable{}),
                                   CcPair{});
  REQUIRE(r2.introduced.size() == 2);
  CHECK(r2.introduced.at(0).kind == VarKind::Gamma);
  CHECK(r2.introduced.at(1).kind == VarKind::DeltaMinus);
  CHECK(r2.pair.vc.edges.size() == 1);  // the weak variable must come after
}
