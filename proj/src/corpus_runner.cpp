#include "epskit/corpus_runner.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>
#include <vector>

#include "epskit/calculus.hpp"
#include "epskit/epsilon.hpp"
#include "epskit/oracle.hpp"
#include "epskit/structure.hpp"

namespace epskit {

namespace {

struct Expectation : EpskitError {
  using EpskitError::EpskitError;
};

void expect(bool cond, const std::string& why) {
  if (!cond) throw Expectation(why);
}

void expect_contains(const std::string& hay, const std::string& needle, const std::string& what) {
  if (hay.find(needle) == std::string::npos)
    throw Expectation(what + " should mention \"" + needle + "\", got: " + hay);
}

std::string join(const std::string& dir, const std::string& file) { return dir + "/" + file; }

Problem load_elim(const std::string& path) {
  Problem p = load_problem(path);
  eliminate_goal_choices(p);
  return p;
}

// Loads problem + script, eliminates choice terms, replays to the end.
struct ProveOutcome {
  ProofState state;
  ReplayReport report;
};

ProveOutcome prove(const std::string& dir, const std::string& pfile, const std::string& sfile) {
  ProofState st(load_elim(join(dir, pfile)));
  Script sc = load_script(join(dir, sfile));
  ReplayReport rep = replay_script(st, sc);
  return ProveOutcome{std::move(st), std::move(rep)};
}

// Replays a script that must be rejected; returns the error message.
std::string prove_rejected(const std::string& dir, const std::string& pfile,
                           const std::string& sfile) {
  ProofState st(load_elim(join(dir, pfile)));
  Script sc = load_script(join(dir, sfile));
  try {
    replay_script(st, sc);
  } catch (const EpskitError& err) {
    return err.what();
  }
  throw Expectation(sfile + " was accepted but must be rejected");
}

std::string variant_name(PiVariant v) { return v == PiVariant::Some ? "some" : "any"; }

OracleVerdict check(const Problem& p, const FiniteStructure& st, PiVariant v) {
  return is_cr_valid(p.goals, p.pair, st, v);
}

void expect_valid(const Problem& p, const FiniteStructure& st, PiVariant v) {
  OracleVerdict verdict = check(p, st, v);
  if (!verdict.valid)
    throw Expectation(variant_name(v) + "-pi check failed on " + st.name + ": " + verdict.detail);
}

void expect_invalid(const Problem& p, const FiniteStructure& st, PiVariant v) {
  OracleVerdict verdict = check(p, st, v);
  if (verdict.valid)
    throw Expectation(variant_name(v) + "-pi check unexpectedly holds on " + st.name);
}

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// One expectation per corpus artifact; `run` returns the PASS detail.
struct Item {
  std::string name;
  std::function<std::string(const std::string& dir)> run;
};

std::string run_prenex_elim(const std::string& dir, int n) {
  Problem p = load_problem(join(dir, "prenex" + std::to_string(n) + ".p"));
  const Ptr& goal = p.goals.at(0).at(0);
  int want = (1 << n) - 1;
  int steps_in = 0, steps_out = 0;
  auto t0 = std::chrono::steady_clock::now();
  Ptr inside = classical_qelim(goal, QelimOrder::InsideOut, &steps_in);
  Ptr outside = classical_qelim(goal, QelimOrder::OutsideIn, &steps_out);
  double ms = ms_since(t0);
  expect(nesting_depth(inside) == want, "inside-out depth " + std::to_string(nesting_depth(inside)) +
                                            ", want " + std::to_string(want));
  expect(nesting_depth(outside) == want, "outside-in depth " +
                                             std::to_string(nesting_depth(outside)) + ", want " +
                                             std::to_string(want));
  if (n <= 3)
    expect(to_string(inside) == to_string(outside), "orders disagree on the normal form");
  // outer-first duplicates the inner prefix into the witness term, so it
  // re-eliminates those copies and takes strictly more steps past n = 1
  expect(steps_in == n, "inside-out took " + std::to_string(steps_in) + " steps, want " +
                            std::to_string(n));
  expect(steps_out >= steps_in, "outside-in took fewer steps than inside-out");
  expect(ms < 1000.0, "elimination took over a second");
  return "depth " + std::to_string(want) + " both orders, " + std::to_string(steps_in) + "/" +
         std::to_string(steps_out) + " steps";
}

std::vector<Item> build_items() {
  std::vector<Item> items;
  auto add = [&](const std::string& name, std::function<std::string(const std::string&)> fn) {
    items.push_back(Item{name, std::move(fn)});
  };

  for (int n = 1; n <= 4; ++n)
    add("elim-prenex" + std::to_string(n),
        [n](const std::string& dir) { return run_prenex_elim(dir, n); });

  add("elim-empty", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "empty.p"));
    const Ptr& goal = p.goals.at(0).at(0);
    int steps = 0;
    Ptr out = classical_qelim(goal, QelimOrder::InsideOut, &steps);
    expect(steps == 0, "expected no elimination steps");
    expect(to_string(out) == to_string(goal), "quantifier-free input changed");
    return std::string("quantifier-free input unchanged");
  });

  add("elim-subordinate", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "subordinate.p"));
    const Ptr& goal = p.goals.at(0).at(0);
    expect(subordinate_pairs(goal).size() == 1, "expected one subordinate pair");
    Problem e = load_elim(join(dir, "subordinate.p"));
    expect(e.pair.cc.size() == 2, "expected two condition entries, got " +
                                      std::to_string(e.pair.cc.size()));
    int nullary = 0, unary = 0;
    for (const auto& [y, abs] : e.pair.cc) {
      (void)y;
      if (abs.params.empty()) ++nullary;
      if (abs.params.size() == 1) ++unary;
    }
    expect(nullary == 1 && unary == 1, "subordinate term should yield one nullary and one "
                                       "unary entry");
    expect(nesting_depth(e.goals.at(0).at(0)) == 0, "choice binders left in the goal");
    return std::string("inner term became a one-parameter entry");
  });

  add("elim-vc-prenex", [](const std::string& dir) {
    std::ostringstream detail;
    for (int n = 1; n <= 4; ++n) {
      Problem p = load_problem(join(dir, "prenex" + std::to_string(n) + ".p"));
      VcReduceResult r = vc_reduction(p.goals.at(0).at(0), p.pair);
      expect(nesting_depth(r.formula) == 0,
             "prenex" + std::to_string(n) + ": depth " + std::to_string(nesting_depth(r.formula)));
      expect(static_cast<int>(r.introduced.size()) == n,
             "prenex" + std::to_string(n) + ": " + std::to_string(r.introduced.size()) +
                 " variables introduced, want " + std::to_string(n));
    }
    return std::string("depth stays 0 for prefixes 1..4");
  });

  add("prove-e2prime", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "e2prime.p", "e2prime.ps");
    expect(o.report.closed, "proof did not close; open: " + o.state.render());
    return "closed in " + std::to_string(o.report.steps) + " steps";
  });

  add("prove-canossa-honest", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "canossa.p", "canossa_honest.ps");
    expect(o.report.closed, "proof did not close; open: " + o.state.render());
    return "closed in " + std::to_string(o.report.steps) + " steps";
  });

  add("prove-canossa-stupid", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "canossa.p", "canossa_stupid.ps");
    expect(!o.report.closed, "the wrong instantiation must not close the proof");
    expect(o.report.open_goals.size() == 1, "expected exactly one open goal");
    std::string left = to_string(o.state.goal(o.report.open_goals.at(0)).at(0));
    expect_contains(left, "HG = Joseph", "the stuck goal");
    return "stuck on " + left;
  });

  add("prove-committed-close", [](const std::string& dir) {
    std::string msg = prove_rejected(dir, "committed.p", "committed.ps");
    expect_contains(msg, "reflexivity", "the close rejection");
    return std::string("close rejected: a committed choice equals itself");
  });

  add("prove-pred", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "pred.p", "pred.ps");
    expect(o.report.closed, "proof did not close; open: " + o.state.render());
    return "closed in " + std::to_string(o.report.steps) + " steps";
  });

  add("prove-ackermann", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "ackermann.p", "ackermann.ps");
    expect(!o.report.closed, "nothing here should close");
    expect(o.report.open_goals.size() == 1, "gamma substitution must not add obligations");
    return std::string("substitution accepted without obligations");
  });

  add("prove-bach1-cycle", [](const std::string& dir) {
    std::string msg = prove_rejected(dir, "bach1.p", "bach1.ps");
    expect_contains(msg, "f1^g -> y0^d+ -> f2^g -> x0^d+ -> f1^g", "the rejection");
    return std::string("circular instantiation rejected");
  });

  add("prove-bach2", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "bach2.p", "bach2.ps");
    expect(!o.report.closed, "nothing here should close");
    expect(o.report.open_goals.size() == 1, "constant ranges must not add obligations");
    return std::string("couple reading accepted without obligations");
  });

  add("prove-henkin2", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "henkin2.p", "henkin2.ps");
    expect(!o.report.closed, "nothing here should close");
    expect(o.report.open_goals.size() == 2, "expected the goal plus one obligation, got " +
                                                std::to_string(o.report.open_goals.size()));
    return std::string("substitution added one obligation");
  });

  add("prove-donkey", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "donkey.p", "donkey.ps");
    expect(!o.report.closed, "the weak reading must not close");
    expect(o.report.open_goals.size() == 1, "expected exactly one open goal");
    const Sequent& g = o.state.goal(o.report.open_goals.at(0));
    bool swapped = false;
    for (const Ptr& m : g)
      if (to_string(m) == "Loves(x0^d-, y0^d-)") swapped = true;
    expect(swapped, "stuck goal should contain the swapped Loves literal");
    return std::string("stuck on the swapped Loves literal");
  });

  add("prove-donkey-strong", [](const std::string& dir) {
    ProveOutcome o = prove(dir, "donkey_strong.p", "donkey_strong.ps");
    expect(!o.report.closed, "the reductions must stay open");
    expect(o.report.open_goals.size() == 2, "expected the two reduced goals, got " +
                                                std::to_string(o.report.open_goals.size()));
    return std::string("reduces to the two expected goals");
  });

  add("load-henkin1", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "henkin1.p"));
    expect(p.pair.cc.size() == 2, "expected two condition entries");
    return std::string("admissible pair with two entries");
  });

  add("load-henkin-cycle", [](const std::string& dir) {
    try {
      load_problem(join(dir, "henkin_cycle.p"));
    } catch (const EpskitError& err) {
      expect_contains(err.what(), "x0^d- -> y1^d+ -> y0^d- -> x1^d+ -> x0^d-", "the rejection");
      return std::string("circular condition rejected at load");
    }
    throw Expectation("henkin_cycle.p loaded but must be rejected");
  });

  add("check-reflex", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "reflex.p"));
    FiniteStructure st = load_structure(join(dir, "two.st"), p.sig);
    expect_valid(p, st, PiVariant::Some);
    for (std::size_t i = 0; i < p.goals.size(); ++i) {
      Problem single = p;
      single.goals = Goals{p.goals.at(i)};
      expect_valid(single, st, PiVariant::Some);
    }
    return std::string("equal and apart choices coexist (combined and per goal)");
  });

  add("check-committed", [](const std::string& dir) {
    Problem p = load_elim(join(dir, "committed.p"));
    expect(p.pair.cc.size() == 1, "sharing should merge the equal choice terms");
    FiniteStructure st = load_structure(join(dir, "two.st"), p.sig);
    expect_invalid(p, st, PiVariant::Some);
    return std::string("a committed choice never differs from itself");
  });

  add("check-e2prime-sweep", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "e2prime.p"));
    int rows = 0;
    for_each_structure(p.sig, 2, [&](const FiniteStructure& st) {
      expect_valid(p, st, PiVariant::Some);
      int truths = 0;
      for (const auto& [tuple, v] : st.tables.at("P"))
        if (v) ++truths;
      bool want = (truths == 1) || st.universe_size("i") == 1;
      OracleVerdict any = check(p, st, PiVariant::Any);
      expect(any.valid == want, "any-pi on " + st.name + ": got " +
                                    (any.valid ? "valid" : "invalid") + ", want " +
                                    (want ? "valid" : "invalid"));
      ++rows;
      return true;
    });
    expect(rows == 6, "expected 6 structures, saw " + std::to_string(rows));
    return std::string("some-pi everywhere; any-pi exactly on unique choice");
  });

  add("check-parent", [](const std::string& dir) {
    Problem p = load_elim(join(dir, "parent.p"));
    FiniteStructure st = load_structure(join(dir, "eden.st"), p.sig);
    expect_valid(p, st, PiVariant::Any);
    return std::string("conditioned choice holds under every committed choice");
  });

  add("check-parent-iota", [](const std::string& dir) {
    Problem p = load_elim(join(dir, "parent_iota.p"));
    FiniteStructure st = load_structure(join(dir, "eden.st"), p.sig);
    expect_invalid(p, st, PiVariant::Any);
    return std::string("description fails when the parent is not unique");
  });

  add("check-canossa", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "canossa.p"));
    FiniteStructure st = load_structure(join(dir, "genealogy.st"), p.sig);
    expect_valid(p, st, PiVariant::Some);
    return std::string("independent choices can name both parents");
  });

  add("check-pope-shared", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "pope_shared.p"));
    FiniteStructure st = load_structure(join(dir, "genealogy.st"), p.sig);
    expect_invalid(p, st, PiVariant::Some);
    return std::string("one shared choice cannot name both parents");
  });

  add("check-pred", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "pred.p"));
    FiniteStructure st = load_structure(join(dir, "mod3.st"), p.sig);
    expect_valid(p, st, PiVariant::Any);
    return std::string("parametric entry pins the committed function");
  });

  add("check-mu", [](const std::string& dir) {
    Problem p = load_elim(join(dir, "mu.p"));
    FiniteStructure st = load_structure(join(dir, "ordered.st"), p.sig);
    expect_valid(p, st, PiVariant::Some);
    expect_valid(p, st, PiVariant::Any);
    return std::string("least-element choice holds under some and any");
  });

  add("check-geurts1-toggle", [](const std::string& dir) {
    Problem weak = load_problem(join(dir, "geurts1.p"));
    FiniteStructure st = load_structure(join(dir, "g_weak.st"), weak.sig);
    expect_valid(weak, st, PiVariant::Some);
    Problem strong = load_problem(join(dir, "geurts1.p"));
    strong.apply_toggle("strong");
    expect_invalid(strong, st, PiVariant::Some);
    return std::string("weak reading holds, strong reading fails");
  });

  add("check-geurts5", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "geurts5.p"));
    FiniteStructure st = load_structure(join(dir, "girls.st"), p.sig);
    expect_valid(p, st, PiVariant::Some);
    return std::string("girl-dependent choice of boy holds");
  });

  add("check-geurts7", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "geurts7.p"));
    FiniteStructure st = load_structure(join(dir, "evens.st"), p.sig);
    expect_valid(p, st, PiVariant::Some);
    return std::string("successor-of-odd choice holds");
  });

  add("check-m2a-sweep", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "donkey_m2a.p"));
    int rows = 0;
    for_each_structure(p.sig, 2, [&](const FiniteStructure& st) {
      OracleVerdict any = check(p, st, PiVariant::Any);
      if (!any.valid) throw Expectation("any-pi fails on " + st.name + ": " + any.detail);
      ++rows;
      return true;
    });
    expect(rows == 264, "expected 264 structures, saw " + std::to_string(rows));
    return std::string("reduced strong reading valid on all 264 structures");
  });

  add("check-henkin-obligation", [](const std::string& dir) {
    Problem p = load_problem(join(dir, "henkin2.p"));
    ProofState st(p);
    st.run_command("inst x3^d+ := lambda u:i. x2^d+");
    expect(st.goals().size() == 2, "expected the goal plus one obligation");
    Problem obl = p;
    obl.goals = Goals{st.goals().at(1)};
    obl.pair = st.pair();
    int rows = 0;
    for_each_structure(p.sig, 2, [&](const FiniteStructure& fs) {
      OracleVerdict any = is_cr_valid(obl.goals, obl.pair, fs, PiVariant::Any);
      if (!any.valid) throw Expectation("obligation fails on " + fs.name + ": " + any.detail);
      ++rows;
      return true;
    });
    expect(rows == 264, "expected 264 structures, saw " + std::to_string(rows));
    return std::string("instantiation obligation valid on all 264 structures");
  });

  add("qc-all-pairs", [](const std::string& dir) {
    const char* plain[] = {"reflex.p",  "e2prime.p",       "canossa.p", "pope_shared.p",
                           "pred.p",    "geurts1.p",       "geurts5.p", "geurts7.p",
                           "donkey_m2a.p", "donkey_strong.p", "henkin1.p", "henkin2.p",
                           "bach1.p",   "bach2.p"};
    const char* elim[] = {"committed.p", "parent.p", "parent_iota.p", "mu.p", "subordinate.p"};
    int checks = 0;
    for (const char* f : plain) checks += qc_sweep(load_problem(join(dir, f)), 2);
    for (const char* f : elim) checks += qc_sweep(load_elim(join(dir, f)), 2);
    return "every entry satisfiable-implies-chosen (" + std::to_string(checks) + " checks)";
  });

  return items;
}

}  // namespace

int qc_sweep(const Problem& prob, int max_size) {
  int checks = 0;
  if (prob.pair.cc.empty()) return 0;
  for_each_structure(prob.sig, max_size, [&](const FiniteStructure& st) {
    for (const auto& [y, abs] : prob.pair.cc) {
      (void)abs;
      Goals g{Sequent{build_QC(prob.pair, y)}};
      for (PiVariant v : {PiVariant::Some, PiVariant::Any}) {
        OracleVerdict verdict = is_cr_valid(g, prob.pair, st, v);
        if (!verdict.valid)
          throw EpskitError(prob.path + ": Q_C(" + y.str() + ") fails " + variant_name(v) +
                            "-pi on " + st.name + ": " + verdict.detail);
      }
      ++checks;
    }
    return true;
  });
  return checks;
}

CorpusResult run_corpus(const std::string& dir, const std::string& only, std::ostream& out) {
  CorpusResult res;
  for (const Item& item : build_items()) {
    if (!only.empty() && item.name.find(only) == std::string::npos) continue;
    try {
      std::string detail = item.run(dir);
      out << "PASS " << item.name << ": " << detail << "\n";
      ++res.passed;
    } catch (const std::exception& err) {
      out << "FAIL " << item.name << ": " << err.what() << "\n";
      ++res.failed;
    }
  }
  return res;
}

}  // namespace epskit
