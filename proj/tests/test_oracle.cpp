#include "doctest.h"

#include "epskit/oracle.hpp"
#include "epskit/parse.hpp"

using namespace epskit;

namespace {

FiniteStructure make_structure(int n) {
  FiniteStructure st;
  st.name = "u" + std::to_string(n);
  std::vector<std::string> elems;
  for (int k = 0; k < n; ++k) elems.push_back(std::to_string(k));
  st.universes["i"] = elems;
  return st;
}

// total table over `arity` arguments: listed tuples true, others false
void add_pred(FiniteStructure& st, const std::string& name, int arity,
              const std::vector<std::vector<int>>& truths) {
  int n = st.universe_size("i");
  auto& table = st.tables[name];
  std::vector<int> tup(arity, 0);
  for (;;) {
    table[tup] = 0;
    int k = arity - 1;
    while (k >= 0 && ++tup[k] == n) tup[k--] = 0;
    if (k < 0) break;
    if (arity == 0) break;
  }
  if (arity == 0) table[{}] = 0;
  for (const auto& t : truths) table[t] = 1;
}

VariableId g(const std::string& n) { return VariableId{n, VarKind::Gamma, base_type("i"), 0}; }
VariableId dm(const std::string& n) {
  return VariableId{n, VarKind::DeltaMinus, base_type("i"), 0};
}
VariableId dp(const std::string& n) {
  return VariableId{n, VarKind::DeltaPlus, base_type("i"), 0};
}

struct Fx {
  Signature sig;
  FreeVarTable frees;
  Fx() {
    sig.declare_sort("i");
    sig.declare_const("P", Type{{base_type("i")}, kBoolSort});
    sig.declare_const("c", base_type("i"));
    for (auto v : {g("x"), dm("u"), dp("y"), dp("y1"), dp("y2")}) frees.declare(v);
  }
  Ptr F(const std::string& t) { return parse_formula(t, sig, frees); }
};

}  // namespace

TEST_CASE("value spaces enumerate elements and total tables") {
  FiniteStructure st = make_structure(2);
  CHECK(value_space(st, base_type("i")).size() == 2);
  CHECK(value_space(st, Type{{base_type("i")}, "i"}).size() == 4);
  CHECK(value_space(st, Type{{base_type("i"), base_type("i")}, "i"}).size() == 16);
}

TEST_CASE("raising tables count source subsets times total tables") {
  FiniteStructure st = make_structure(2);
  OracleLimits lim;
  CHECK(count_raisings(st, {g("t")}, {dm("a")}, VarCond{}, lim) == 6);
  CHECK(count_raisings(st, {g("t"), g("s")}, {dm("a")}, VarCond{}, lim) == 36);
  CHECK(count_raisings(st, {g("t")}, {dm("a"), dm("b")}, VarCond{}, lim) == 26);
}

TEST_CASE("a base edge can forbid a dependency") {
  Fx fx;
  FiniteStructure st = make_structure(2);
  Goals goals{{fx.F("x^g = u^d-")}};

  // x may read u: the identity table wins
  CHECK(is_r_valid(goals, VarCond{}, st).valid);

  // x declared older than u: no raising may read u, so no witness
  VarCond older;
  older.add(g("x"), dm("u"));
  CHECK(!is_r_valid(goals, older, st).valid);
}

TEST_CASE("distinct trivially conditioned variables can be chosen equal or apart") {
  Fx fx;
  FiniteStructure st = make_structure(2);
  CcPair pair;
  pair.cc[dp("y1")] = Abstraction{{}, mk_top()};
  pair.cc[dp("y2")] = Abstraction{{}, mk_top()};

  Goals equal{{fx.F("y1^d+ = y2^d+")}};
  Goals apart{{fx.F("y1^d+ != y2^d+")}};
  CHECK(is_cr_valid(equal, pair, st, PiVariant::Some).valid);
  CHECK(is_cr_valid(apart, pair, st, PiVariant::Some).valid);

  // under every committed choice neither direction survives
  CHECK(!is_cr_valid(equal, pair, st, PiVariant::Any).valid);
  CHECK(!is_cr_valid(apart, pair, st, PiVariant::Any).valid);
}

TEST_CASE("a shared variable is never apart from itself") {
  Fx fx;
  FiniteStructure st = make_structure(2);
  CcPair pair;
  pair.cc[dp("y")] = Abstraction{{}, mk_top()};
  Goals goals{{fx.F("y^d+ != y^d+")}};
  OracleVerdict v = is_cr_valid(goals, pair, st, PiVariant::Some);
  CHECK(!v.valid);
}

TEST_CASE("satisfiable conditions pin the committed choice") {
  Fx fx;
  CcPair pair;
  pair.cc[dp("y")] = Abstraction{{}, fx.F("P(y^d+)")};
  Goals goals{{fx.F("(ex z:i. P(z)) -> P(y^d+)")}};

  for (int n = 1; n <= 2; ++n) {
    FiniteStructure st = make_structure(n);
    add_pred(st, "P", 1, {{0}});
    st.tables["c"][{}] = 0;
    CHECK(is_cr_valid(goals, pair, st, PiVariant::Any).valid);
  }

  // an unsatisfiable condition leaves the choice free
  FiniteStructure st = make_structure(2);
  add_pred(st, "P", 1, {});
  st.tables["c"][{}] = 0;
  Goals pinned{{fx.F("y^d+ = c")}};
  CHECK(is_cr_valid(pinned, pair, st, PiVariant::Some).valid);
  CHECK(!is_cr_valid(pinned, pair, st, PiVariant::Any).valid);
}

TEST_CASE("reduction soundness check") {
  Fx fx;
  FiniteStructure st = make_structure(2);
  add_pred(st, "P", 1, {{0}});
  st.tables["c"][{}] = 0;

  Goals g0{{fx.F("P(c)")}};
  Goals g1{{fx.F("P(c) /\\ c = c")}};
  CHECK(reduces_check(g0, g1, CcPair{}, st).valid);

  // the reverse direction only holds because P(c) is true in this structure
  CHECK(reduces_check(g0, Goals{{fx.F("c = c")}}, CcPair{}, st).valid);
  FiniteStructure bad = make_structure(2);
  add_pred(bad, "P", 1, {});
  bad.tables["c"][{}] = 0;
  CHECK(!reduces_check(g0, Goals{{fx.F("c = c")}}, CcPair{}, bad).valid);
}

TEST_CASE("hard caps are explicit errors") {
  Fx fx;
  FiniteStructure st = make_structure(4);
  add_pred(st, "P", 1, {});
  st.tables["c"][{}] = 0;
  Goals goals{{fx.F("P(c)")}};
  CHECK_THROWS_WITH_AS(is_cr_valid(goals, CcPair{}, st, PiVariant::Some).valid,
                       doctest::Contains("universe"), EpskitError);

  FiniteStructure small = make_structure(2);
  add_pred(small, "P", 1, {});
  small.tables["c"][{}] = 0;
  FreeVarTable many;
  for (const char* n : {"a1", "a2", "a3", "a4"}) many.declare(dp(n));
  CcPair pair;
  for (const char* n : {"a1", "a2", "a3", "a4"})
    pair.cc[dp(n)] = Abstraction{{}, mk_top()};
  Goals wide{{parse_formula("a1^d+ = a2^d+", fx.sig, many)}};
  CHECK_THROWS_WITH_AS(is_cr_valid(wide, pair, small, PiVariant::Some).valid,
                       doctest::Contains("cap"), EpskitError);
}

TEST_CASE("named axiom instances") {
  // choice and description axioms hold everywhere, both variants
  for (int n = 1; n <= 2; ++n) {
    for (std::uint64_t bits = 0; bits < (1u << n); ++bits) {
      FiniteStructure st = make_structure(n);
      std::vector<std::vector<int>> truths;
      for (int k = 0; k < n; ++k)
        if (bits & (1u << k)) truths.push_back({k});
      add_pred(st, "P", 1, truths);
      for (const char* ax : {"eps0", "iota0"}) {
        CHECK(check_axiom(ax, st, PiVariant::Some).valid);
        CHECK(check_axiom(ax, st, PiVariant::Any).valid);
      }
      // bottom and top conditions can always be chosen equal, but only a
      // one-element universe forces them equal
      CHECK(check_axiom("eps5", st, PiVariant::Some).valid);
      CHECK(check_axiom("eps5", st, PiVariant::Any).valid == (n == 1));
    }
  }
}

TEST_CASE("extensionality axioms over two predicates") {
  int any_invalid = 0;
  for (int n = 1; n <= 2; ++n) {
    for (std::uint64_t pb = 0; pb < (1u << n); ++pb) {
      for (std::uint64_t qb = 0; qb < (1u << n); ++qb) {
        FiniteStructure st = make_structure(n);
        std::vector<std::vector<int>> pt, qt;
        for (int k = 0; k < n; ++k) {
          if (pb & (1u << k)) pt.push_back({k});
          if (qb & (1u << k)) qt.push_back({k});
        }
        add_pred(st, "P", 1, pt);
        add_pred(st, "Q", 1, qt);

        CHECK(check_axiom("E2", st, PiVariant::Some).valid);
        bool want = pb != qb || pt.size() == 1 || n == 1;
        CHECK(check_axiom("E2", st, PiVariant::Any).valid == want);

        CHECK(check_axiom("vext", st, PiVariant::Some).valid);
        if (!check_axiom("vext", st, PiVariant::Any).valid) ++any_invalid;
      }
    }
  }
  CHECK(any_invalid == 4);
}

TEST_CASE("minimum operator needs a witnessing order") {
  FiniteStructure ordered = make_structure(3);
  add_pred(ordered, "P", 1, {{1}, {2}});
  add_pred(ordered, "le", 2, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}});
  CHECK(check_axiom("mu0", ordered, PiVariant::Some).valid);
  CHECK(check_axiom("mu0", ordered, PiVariant::Any).valid);

  // nonempty P with the empty relation has no least witness
  FiniteStructure bare = make_structure(2);
  add_pred(bare, "P", 1, {{0}});
  add_pred(bare, "le", 2, {});
  CHECK(!check_axiom("mu0", bare, PiVariant::Some).valid);
}
