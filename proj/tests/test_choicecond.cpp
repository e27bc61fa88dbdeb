#include "doctest.h"

#include <algorithm>

#include "epskit/choicecond.hpp"
#include "epskit/parse.hpp"

using namespace epskit;

namespace {

struct Fixture {
  Signature sig;
  FreeVarTable frees;
  VariableId y{"y", VarKind::DeltaPlus, base_type("i"), 0};
  VariableId h{"h", VarKind::DeltaPlus, Type{{base_type("i")}, "i"}, 0};
  VariableId u{"u", VarKind::DeltaMinus, base_type("i"), 0};
  VariableId x{"x", VarKind::Gamma, base_type("i"), 0};

  Fixture() {
    sig.declare_sort("i");
    sig.declare_const("P", Type{{base_type("i")}, kBoolSort});
    sig.declare_const("R", Type{{base_type("i"), base_type("i")}, kBoolSort});
    sig.declare_const("c", base_type("i"));
    frees.declare(y);
    frees.declare(h);
    frees.declare(u);
    frees.declare(x);
  }

  Ptr F(const std::string& t) { return parse_formula(t, sig, frees); }
  Ptr E(const std::string& t) { return parse_expr(t, sig, frees); }
};

bool has_code(const std::vector<CcViolation>& v, const std::string& code) {
  return std::any_of(v.begin(), v.end(), [&](const CcViolation& x) { return x.code == code; });
}

}  // namespace

TEST_CASE("entry bodies must respect the condition order") {
  Fixture fx;
  CcPair pair;
  pair.cc[fx.y] = Abstraction{{}, fx.F("P(y^d+) /\\ R(y^d+, u^d-)")};
  CHECK(has_code(validate_cc(pair), "cc-unordered"));

  pair.vc.add(fx.u, fx.y);  // u is chosen before y
  CHECK(validate_cc(pair).empty());
}

TEST_CASE("entries attach to strong universal variables only") {
  Fixture fx;
  CcPair pair;
  pair.cc[fx.x] = Abstraction{{}, fx.F("P(x^g)")};
  CHECK(has_code(validate_cc(pair), "cc-domain"));
}

TEST_CASE("parametric entries use their variable fully applied") {
  Fixture fx;
  VariableId v{"v", VarKind::Bound, base_type("i"), fresh_uid()};
  CcPair pair;
  pair.cc[fx.h] = Abstraction{{v}, parse_formula("R(h^d+(v), v)", fx.sig, [&] {
                                FreeVarTable t = fx.frees;
                                t.declare(v);
                                return t;
                              }())};
  CHECK(validate_cc(pair).empty());

  // the bare variable (not applied to the parameters) is rejected
  CcPair bare;
  bare.cc[fx.h] = Abstraction{{v}, fx.F("R(c, c)")};
  CHECK(validate_cc(bare).empty());  // unused is fine
  bare.cc[fx.h] = Abstraction{{v}, fx.F("h^d+(c) = c")};
  CHECK(has_code(validate_cc(bare), "cc-occurrence"));
}

TEST_CASE("Q_C builds the witness implication") {
  Fixture fx;
  CcPair pair;
  pair.cc[fx.y] = Abstraction{{}, fx.F("P(y^d+)")};
  Ptr q = build_QC(pair, fx.y);
  CHECK(to_string(q) == "(ex y_w:i. P(y_w)) -> P(y^d+)");
}

TEST_CASE("Q_C on a parametric entry quantifies the parameters") {
  Fixture fx;
  VariableId v{"v", VarKind::Bound, base_type("i"), fresh_uid()};
  FreeVarTable t = fx.frees;
  t.declare(v);
  CcPair pair;
  pair.cc[fx.h] = Abstraction{{v}, parse_formula("R(h^d+(v), v)", fx.sig, t)};
  Ptr q = build_QC(pair, fx.h);
  CHECK(to_string(q) == "all v:i. ((ex h_w:i. R(h_w, v)) -> R(h^d+(v), v))");
}

TEST_CASE("sigma update drops substituted entries and instantiates the rest") {
  Fixture fx;
  CcPair pair;
  pair.cc[fx.y] = Abstraction{{}, fx.F("R(y^d+, x^g)")};
  pair.vc.add(fx.x, fx.y);

  SubstitutionMap s;
  s.entries[fx.x] = fx.E("c");
  CcPair next = extended_sigma_update(pair, s);
  CHECK(next.cc.count(fx.y) == 1);
  CHECK(to_string(next.cc.at(fx.y).body) == "R(y^d+, c)");

  SubstitutionMap s2;
  s2.entries[fx.y] = fx.E("c");
  CcPair dropped = extended_sigma_update(pair, s2);
  CHECK(dropped.cc.count(fx.y) == 0);
}

TEST_CASE("obligations cover exactly the conditioned substituted variables that matter") {
  Fixture fx;
  CcPair pair;
  pair.cc[fx.y] = Abstraction{{}, fx.F("P(y^d+)")};

  // goal mentions a delta-plus variable reachable from y via the condition
  Goals goals{{fx.F("P(y^d+)")}};
  SubstitutionMap s;
  s.entries[fx.y] = fx.E("c");
  auto obls = obligations_for(pair, s, goals);
  REQUIRE(obls.size() == 1);
  CHECK(to_string(obls[0]) == "(ex y_w:i. P(y_w)) -> P(c)");

  // gamma variables without entries yield no obligations
  SubstitutionMap s2;
  s2.entries[fx.x] = fx.E("c");
  CHECK(obligations_for(pair, s2, goals).empty());
}
