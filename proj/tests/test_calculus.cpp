#include "doctest.h"

#include "epskit/calculus.hpp"
#include "epskit/parse.hpp"

using namespace epskit;

namespace {

// builds an in-memory problem over P : i > o, R : i > i > o, f : i > i, c : i
struct Maker {
  Problem prob;

  Maker() {
    prob.sig.declare_sort("i");
    prob.sig.declare_const("P", Type{{base_type("i")}, kBoolSort});
    prob.sig.declare_const("R", Type{{base_type("i"), base_type("i")}, kBoolSort});
    prob.sig.declare_const("f", Type{{base_type("i")}, "i"});
    prob.sig.declare_const("c", base_type("i"));
  }

  Maker& declare(const std::string& name, VarKind k, const Type& t = base_type("i")) {
    prob.frees.declare(VariableId{name, k, t, 0});
    return *this;
  }

  Maker& goal(const std::string& text) {
    prob.goals.push_back(Sequent{parse_formula(text, prob.sig, prob.frees)});
    return *this;
  }

  Maker& cc(const std::string& var, const std::string& body) {
    VariableId y = parse_free_ref(var, prob.frees);
    prob.pair.cc[y] = Abstraction{{}, parse_formula(body, prob.sig, prob.frees)};
    return *this;
  }

  ProofState state() { return ProofState(prob); }
};

}  // namespace

TEST_CASE("alpha splits an implication inside one goal and close finds the pair") {
  ProofState st = Maker().goal("P(c) -> P(c)").state();
  CHECK(st.lowest_open() == 0);
  st.apply_alpha(0, 0);
  CHECK(st.goal(0).size() == 2);
  st.apply_close(0);
  CHECK(st.closed());
}

TEST_CASE("beta forks a conjunction into two goals") {
  ProofState st = Maker().goal("P(c) /\\ ~P(c)").state();
  st.apply_beta(0, 0);
  CHECK(st.goals().size() == 2);
  CHECK(st.goals().count(1) == 1);
  CHECK(st.goals().count(2) == 1);
  CHECK(st.goals().count(0) == 0);  // consumed
}

TEST_CASE("gamma instantiates but keeps the principal formula") {
  ProofState st = Maker().goal("ex x:i. P(x)").state();
  st.apply_gamma(0, 0, parse_expr("c", st.problem().sig, st.frees()));
  REQUIRE(st.goal(0).size() == 2);
  CHECK(to_string(st.goal(0).at(0)) == "P(c)");
  CHECK(to_string(st.goal(0).at(1)) == "ex x:i. P(x)");
}

TEST_CASE("gamma rejects ill-typed and open terms") {
  Maker mk;
  mk.goal("ex x:i. P(x)");
  ProofState st = mk.state();
  CHECK_THROWS(st.apply_gamma(0, 0, parse_expr("P(c)", st.problem().sig, st.frees())));
  CHECK_THROWS(st.apply_gamma(0, 0, parse_expr("f", st.problem().sig, st.frees())));
}

TEST_CASE("weak delta replaces the principal and registers newer-than edges") {
  Maker mk;
  mk.declare("x", VarKind::Gamma);
  mk.goal("P(x^g) \\/ all y:i. R(x^g, y)");
  ProofState st = mk.state();
  st.apply_alpha(0, 0);
  VariableId z = st.apply_delta_minus(0, 1);
  CHECK(z.kind == VarKind::DeltaMinus);
  CHECK(st.frees().find(z.name, VarKind::DeltaMinus) != nullptr);
  // the remaining rigid variable x must now be older than z
  CHECK(st.pair().vc.edges.count({VariableId{"x", VarKind::Gamma, base_type("i"), 0}, z}) == 1);
}

TEST_CASE("strong delta commits a counterexample search") {
  ProofState st = Maker().goal("all y:i. P(y)").state();
  VariableId z = st.apply_delta_plus(0, 0);
  CHECK(z.kind == VarKind::DeltaPlus);
  REQUIRE(st.pair().cc.count(z) == 1);
  CHECK(to_string(st.pair().cc.at(z).body) == "~P(" + z.str() + ")");
  CHECK(to_string(st.goal(0).at(0)) == "P(" + z.str() + ")");
}

TEST_CASE("instantiation substitutes everywhere and collects obligations") {
  Maker mk;
  mk.declare("y", VarKind::DeltaPlus);
  mk.cc("y^d+", "P(y^d+)");
  mk.goal("y^d+ = c");
  ProofState st = mk.state();

  SubstitutionMap sigma;
  sigma.entries[VariableId{"y", VarKind::DeltaPlus, base_type("i"), 0}] =
      parse_expr("c", st.problem().sig, st.frees());
  st.apply_instantiate(sigma);

  REQUIRE(st.goals().size() == 2);
  CHECK(to_string(st.goal(0).at(0)) == "c = c");
  CHECK(to_string(st.goal(1).at(0)) == "ex y_w:i. P(y_w) -> P(c)");
  CHECK(st.pair().cc.empty());  // the substituted entry is gone

  st.apply_close(0);  // reflexivity
  CHECK(st.goals().size() == 1);
}

TEST_CASE("instantiation refuses weak universal variables and cycles") {
  Maker mk;
  mk.declare("u", VarKind::DeltaMinus);
  mk.declare("x", VarKind::Gamma);
  mk.goal("R(u^d-, x^g)");
  ProofState st = mk.state();

  SubstitutionMap weak;
  weak.entries[VariableId{"u", VarKind::DeltaMinus, base_type("i"), 0}] =
      parse_expr("c", st.problem().sig, st.frees());
  CHECK_THROWS(st.apply_instantiate(weak));

  Maker loop;
  loop.declare("x", VarKind::Gamma);
  loop.declare("u", VarKind::DeltaMinus);
  loop.prob.pair.vc.add(VariableId{"x", VarKind::Gamma, base_type("i"), 0},
                        VariableId{"u", VarKind::DeltaMinus, base_type("i"), 0});
  loop.goal("R(u^d-, x^g)");
  ProofState st2 = loop.state();
  SubstitutionMap cyc;
  cyc.entries[VariableId{"x", VarKind::Gamma, base_type("i"), 0}] =
      parse_expr("f(u^d-)", st2.problem().sig, st2.frees());
  CHECK_THROWS_WITH_AS(st2.apply_instantiate(cyc), doctest::Contains("cycle"), EpskitError);
}

TEST_CASE("close has no equality symmetry of its own") {
  ProofState st = Maker().goal("c = f(c) \\/ ~(f(c) = c)").state();
  st.apply_alpha(0, 0);
  CHECK_THROWS(st.apply_close(0));
}

TEST_CASE("denied reflexivity is called out") {
  ProofState st = Maker().goal("c != c").state();
  CHECK_THROWS_WITH_AS(st.apply_close(0), doctest::Contains("reflexivity"), EpskitError);
}

TEST_CASE("lemmas enter negated, queries too") {
  Maker mk;
  mk.declare("y", VarKind::DeltaPlus);
  mk.cc("y^d+", "P(y^d+)");
  mk.goal("P(y^d+)");
  mk.prob.lemmas.push_back(
      Lemma{"taut", parse_formula("all v:i. (P(v) -> P(v))", mk.prob.sig, mk.prob.frees)});
  ProofState st = mk.state();

  st.apply_lemma("taut", 0);
  CHECK(to_string(st.goal(0).at(0)) == "~(all v:i. (P(v) -> P(v)))");

  st.apply_lemma("qc(y^d+)", 0);
  CHECK(to_string(st.goal(0).at(0)) == "~((ex y_w:i. P(y_w)) -> P(y^d+))");

  CHECK_THROWS(st.apply_lemma("missing", 0));
}

TEST_CASE("scripts replay command by command") {
  Maker mk;
  mk.goal("P(c) -> P(c)");
  ProofState st = mk.state();
  Script sc;
  sc.path = "<inline>";
  sc.lines = {{1, "alpha 0 0"}, {2, "close 0"}};
  ReplayReport rep = replay_script(st, sc);
  CHECK(rep.closed);
  CHECK(rep.steps == 2);
  CHECK(rep.open_goals.empty());
}

TEST_CASE("replay reports the offending line") {
  Maker mk;
  mk.goal("P(c)");
  ProofState st = mk.state();
  Script sc;
  sc.path = "bad.ps";
  sc.lines = {{3, "close 0"}};
  try {
    replay_script(st, sc);
    FAIL("expected a rejection");
  } catch (const EpskitError& err) {
    CHECK(std::string(err.what()).find("bad.ps:3") != std::string::npos);
  }
}

TEST_CASE("eliminating goal choices registers the introduced variables") {
  Maker mk;
  mk.goal("P(eps x:i. P(x))");
  Problem p = mk.prob;
  eliminate_goal_choices(p);
  CHECK(p.pair.cc.size() == 1);
  CHECK(p.goals.at(0).at(0)->kind == Kind::App);
  const VariableId& y = p.pair.cc.begin()->first;
  CHECK(p.frees.find(y.name, y.kind) != nullptr);
}
