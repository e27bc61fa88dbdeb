#include "epskit/problem.hpp"

#include <fstream>
#include <sstream>

namespace epskit {

const Lemma* Problem::find_lemma(const std::string& name) const {
  for (const auto& l : lemmas) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

void Problem::apply_toggle(const std::string& name) {
  for (const auto& t : toggles) {
    if (t.name != name) continue;
    CcPair next = pair;
    next.vc.add(t.from, t.to);
    auto bad = validate_cc(next);
    if (!bad.empty())
      throw EpskitError("toggle " + name + " rejected:\n" + violations_string(bad));
    pair = next;
    return;
  }
  throw EpskitError("unknown toggle: " + name);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EpskitError("cannot open problem file: " + path);
  Problem prob;
  prob.path = path;

  std::string line;
  int lineno = 0;
  auto ctx = [&]() { return path + ":" + std::to_string(lineno); };

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string kw;
    ls >> kw;
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    try {
      if (kw == "sort") {
        prob.sig.declare_sort(rest);
      } else if (kw == "const") {
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) throw EpskitError("expected 'const NAME : TYPE'");
        std::string name = trim(rest.substr(0, colon));
        Type ty = parse_type(rest.substr(colon + 1), prob.sig);
        prob.sig.declare_const(name, ty);
      } else if (kw == "free") {
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) throw EpskitError("expected 'free NAME^k : TYPE'");
        std::string ref = trim(rest.substr(0, colon));
        Type ty = parse_type(rest.substr(colon + 1), prob.sig);
        VarKind kind;
        std::string name;
        if (ref.size() > 3 && ref.substr(ref.size() - 3) == "^d-") {
          kind = VarKind::DeltaMinus;
          name = ref.substr(0, ref.size() - 3);
        } else if (ref.size() > 3 && ref.substr(ref.size() - 3) == "^d+") {
          kind = VarKind::DeltaPlus;
          name = ref.substr(0, ref.size() - 3);
        } else if (ref.size() > 2 && ref.substr(ref.size() - 2) == "^g") {
          kind = VarKind::Gamma;
          name = ref.substr(0, ref.size() - 2);
        } else {
          throw EpskitError("free variable needs a class suffix (^g, ^d-, ^d+)");
        }
        prob.frees.declare(VariableId{name, kind, ty, 0});
      } else if (kw == "vc") {
        std::size_t arrow = rest.find("->");
        if (arrow == std::string::npos) throw EpskitError("expected 'vc FROM -> TO'");
        VariableId from = parse_free_ref(rest.substr(0, arrow), prob.frees);
        VariableId to = parse_free_ref(rest.substr(arrow + 2), prob.frees);
        prob.pair.vc.add(from, to);
      } else if (kw == "cc") {
        std::size_t assign = rest.find(":=");
        if (assign == std::string::npos) throw EpskitError("expected 'cc VAR := BODY'");
        VariableId y = parse_free_ref(rest.substr(0, assign), prob.frees);
        Ptr body = parse_expr(trim(rest.substr(assign + 2)), prob.sig, prob.frees);
        Abstraction abs;
        while (body->kind == Kind::Lam) {
          abs.params.push_back(body->var);
          body = body->a;
        }
        abs.body = body;
        if (prob.pair.cc.count(y))
          throw EpskitError("duplicate condition entry for " + y.str());
        prob.pair.cc[y] = abs;
      } else if (kw == "goal") {
        prob.goals.push_back(parse_sequent(rest, prob.sig, prob.frees));
      } else if (kw == "lemma") {
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos) throw EpskitError("expected 'lemma NAME : FORMULA'");
        Lemma l;
        l.name = trim(rest.substr(0, colon));
        l.formula = parse_formula(rest.substr(colon + 1), prob.sig, prob.frees);
        prob.lemmas.push_back(l);
      } else if (kw == "toggle") {
        std::size_t colon = rest.find(':');
        if (colon == std::string::npos)
          throw EpskitError("expected 'toggle NAME : vc FROM -> TO'");
        Toggle tg;
        tg.name = trim(rest.substr(0, colon));
        std::string spec = trim(rest.substr(colon + 1));
        if (spec.rfind("vc", 0) != 0) throw EpskitError("toggle only supports vc edges");
        spec = trim(spec.substr(2));
        std::size_t arrow = spec.find("->");
        if (arrow == std::string::npos) throw EpskitError("expected 'vc FROM -> TO'");
        tg.from = parse_free_ref(spec.substr(0, arrow), prob.frees);
        tg.to = parse_free_ref(spec.substr(arrow + 2), prob.frees);
        prob.toggles.push_back(tg);
      } else {
        throw EpskitError("unknown directive: " + kw);
      }
    } catch (const EpskitError& err) {
      throw EpskitError(ctx() + ": " + err.what());
    }
  }

  auto bad = validate_cc(prob.pair);
  if (!bad.empty())
    throw EpskitError(path + ": initial pair inadmissible:\n" + violations_string(bad));
  for (const auto& g : prob.goals) {
    for (const auto& f : g) {
      if (!is_formula(f)) throw EpskitError(path + ": goal member is not a formula");
    }
  }
  return prob;
}

Script load_script(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw EpskitError("cannot open script file: " + path);
  Script sc;
  sc.path = path;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    sc.lines.emplace_back(lineno, t);
  }
  return sc;
}

}  // namespace epskit
