#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "epskit/calculus.hpp"
#include "epskit/corpus_runner.hpp"
#include "epskit/epsilon.hpp"
#include "epskit/oracle.hpp"
#include "epskit/structure.hpp"

namespace py = pybind11;
using namespace epskit;

namespace {

PiVariant variant_of(const std::string& v) {
  if (v == "some") return PiVariant::Some;
  if (v == "any") return PiVariant::Any;
  throw EpskitError("unknown variant: " + v + " (use some|any)");
}

py::dict prove(const std::string& problem, const std::string& script) {
  Problem p = load_problem(problem);
  eliminate_goal_choices(p);
  ProofState st(p);
  ReplayReport rep = replay_script(st, load_script(script));
  py::dict out;
  out["closed"] = rep.closed;
  out["steps"] = rep.steps;
  py::list open;
  for (int idx : rep.open_goals) open.append(to_string(st.goal(idx)));
  out["open"] = open;
  return out;
}

py::dict check_model(const std::string& problem, const std::string& structure,
                     const std::string& variant) {
  Problem p = load_problem(problem);
  eliminate_goal_choices(p);
  FiniteStructure st = load_structure(structure, p.sig);
  OracleVerdict v = is_cr_valid(p.goals, p.pair, st, variant_of(variant));
  py::dict out;
  out["valid"] = v.valid;
  out["detail"] = v.detail;
  return out;
}

py::dict corpus(const std::string& dir, const std::string& only) {
  std::ostringstream log;
  CorpusResult r = run_corpus(dir, only, log);
  py::dict out;
  out["passed"] = r.passed;
  out["failed"] = r.failed;
  out["log"] = log.str();
  return out;
}

py::list qelim(const std::string& problem, const std::string& order) {
  Problem p = load_problem(problem);
  QelimOrder ord = order == "out" ? QelimOrder::OutsideIn : QelimOrder::InsideOut;
  py::list out;
  for (const auto& goal : p.goals)
    for (const auto& member : goal) out.append(to_string(classical_qelim(member, ord)));
  return out;
}

py::list qelim_depths(const std::string& problem) {
  Problem p = load_problem(problem);
  py::list out;
  for (const auto& goal : p.goals)
    for (const auto& member : goal)
      out.append(nesting_depth(classical_qelim(member, QelimOrder::InsideOut)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_epskit, m) {
  m.doc() = "choice-condition proof tool: script replay and finite-model checking";
  m.def("prove", &prove, py::arg("problem"), py::arg("script"),
        "replay a proof script; returns closed flag, step count and open goals");
  m.def("check_model", &check_model, py::arg("problem"), py::arg("structure"),
        py::arg("variant") = "some", "finite-model validity of a problem's goals");
  m.def("corpus", &corpus, py::arg("dir") = "corpus", py::arg("only") = "",
        "run the bundled expectation table");
  m.def("qelim", &qelim, py::arg("problem"), py::arg("order") = "in",
        "classical quantifier elimination of every goal, printed");
  m.def("qelim_depths", &qelim_depths, py::arg("problem"),
        "choice-term nesting depth after elimination");
  py::register_exception<EpskitError>(m, "EpskitError");
}
