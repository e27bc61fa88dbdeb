#include "epskit/choicecond.hpp"

#include <algorithm>
#include <functional>

namespace epskit {

Ptr Abstraction::as_lambda() const {
  Ptr out = body;
  for (auto it = params.rbegin(); it != params.rend(); ++it) out = mk_lam(*it, out);
  return out;
}

namespace {

// Checks that every occurrence of y in e is the head of an application
// spine y(v0)...(v_{l-1}) with exactly the given parameters, in order.
void check_occurrences(const Ptr& e, const VariableId& y,
                       const std::vector<VariableId>& params, bool under_exact,
                       std::vector<CcViolation>& out) {
  if (e->kind == Kind::Var) {
    if (e->var == y && !under_exact && !params.empty()) {
      out.push_back({"cc-occurrence",
                     y.str() + " occurs without its full parameter list"});
    }
    return;
  }
  // match a full application spine rooted here
  if (e->kind == Kind::App) {
    std::vector<Ptr> args;
    Ptr head = e;
    while (head->kind == Kind::App) {
      args.push_back(head->b);
      head = head->a;
    }
    std::reverse(args.begin(), args.end());
    if (head->kind == Kind::Var && head->var == y) {
      bool exact = args.size() == params.size();
      if (exact) {
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (!(args[i]->kind == Kind::Var && args[i]->var == params[i])) exact = false;
        }
      }
      if (!exact) {
        out.push_back({"cc-occurrence",
                       y.str() + " occurs applied to something other than its "
                       "parameter list " + to_string(e)});
      }
      for (const auto& a : args) check_occurrences(a, y, params, false, out);
      return;
    }
  }
  if (e->a) check_occurrences(e->a, y, params, false, out);
  if (e->b) check_occurrences(e->b, y, params, false, out);
}

}  // namespace

std::vector<CcViolation> validate_cc(const CcPair& pair) {
  std::vector<CcViolation> out;
  if (auto cyc = find_cycle(pair.vc)) {
    out.push_back({"vc-cycle", "variable-condition cycle: " + cycle_string(*cyc)});
  }
  for (const auto& [y, abs] : pair.cc) {
    if (y.kind != VarKind::DeltaPlus) {
      out.push_back({"cc-domain", "entry attached to non-delta-plus variable " + y.str()});
      continue;
    }
    // type shape: y : t0 > ... > t_{l-1} > base, params typed t0..t_{l-1}
    if (abs.params.size() > y.type.args.size()) {
      out.push_back({"cc-type", y.str() + " has " + std::to_string(abs.params.size()) +
                                    " parameters but type " + y.type.str()});
    } else {
      for (std::size_t i = 0; i < abs.params.size(); ++i) {
        if (!(abs.params[i].type == y.type.args[i])) {
          out.push_back({"cc-type", "parameter " + abs.params[i].name + " of " + y.str() +
                                        " has type " + abs.params[i].type.str() +
                                        ", expected " + y.type.args[i].str()});
        }
      }
      if (abs.params.size() != y.type.args.size()) {
        out.push_back({"cc-type", y.str() + " must be abstracted over all " +
                                      std::to_string(y.type.args.size()) + " arguments"});
      }
    }
    try {
      if (!is_formula(abs.body)) {
        out.push_back({"cc-body", "body of " + y.str() + " is not a formula"});
      }
    } catch (const EpskitError& err) {
      out.push_back({"cc-body", "body of " + y.str() + " is ill-typed: " + err.what()});
    }
    if (contains_choice(abs.body)) {
      out.push_back({"cc-body", "body of " + y.str() + " contains choice binders"});
    }
    // free bound-kind variables must all be parameters
    std::set<VariableId> pset(abs.params.begin(), abs.params.end());
    for (const auto& v : free_bound_vars(abs.body)) {
      if (!pset.count(v)) {
        out.push_back({"cc-params", "body of " + y.str() +
                                        " has stray bound-kind variable " + v.name});
      }
    }
    // ordering: every free variable of the body must reach y through R*
    std::set<VariableId> target{y};
    auto before = reachable_into(pair.vc, target);
    for (const auto& z : free_vars(abs.body, VarSel::AllFree)) {
      if (z == y) continue;
      if (!before.count(z)) {
        out.push_back({"cc-unordered", z.str() + " occurs in the condition of " + y.str() +
                                           " but does not precede it"});
      }
    }
    check_occurrences(abs.body, y, abs.params, false, out);
  }
  return out;
}

std::string violations_string(const std::vector<CcViolation>& v) {
  std::string out;
  for (const auto& x : v) {
    if (!out.empty()) out += "\n";
    out += "[" + x.code + "] " + x.message;
  }
  return out;
}

Ptr build_QC(const CcPair& pair, const VariableId& y) {
  auto it = pair.cc.find(y);
  if (it == pair.cc.end()) throw EpskitError("no condition entry for " + y.str());
  const Abstraction& abs = it->second;
  Ptr b = abs.body;
  std::vector<Ptr> args;
  for (const auto& v : abs.params) args.push_back(mk_var(v));
  Ptr applied = mk_app(mk_var(y), args);
  Type res = base_type(y.type.base);
  VariableId yp{y.name + "_w", VarKind::Bound, res, fresh_uid()};
  Ptr inner = replace_all(b, applied, mk_var(yp));
  Ptr q = mk_imp(mk_exists(yp, inner), b);
  for (auto it2 = abs.params.rbegin(); it2 != abs.params.rend(); ++it2) {
    q = mk_forall(*it2, q);
  }
  return q;
}

CcPair extend(const CcPair& pair, const std::map<VariableId, Abstraction>& entries,
              const VarCond& edges) {
  CcPair out = pair;
  for (const auto& [y, abs] : entries) {
    if (out.cc.count(y))
      throw EpskitError("condition entry for " + y.str() + " already present");
    out.cc.emplace(y, abs);
  }
  out.vc = merge(out.vc, edges);
  auto bad = validate_cc(out);
  if (!bad.empty())
    throw EpskitError("extension rejected:\n" + violations_string(bad));
  return out;
}

CcPair extended_sigma_update(const CcPair& pair, const SubstitutionMap& s) {
  CcPair out;
  out.vc = sigma_update(pair.vc, s);
  for (const auto& [y, abs] : pair.cc) {
    if (s.entries.count(y)) continue;  // entry dropped for substituted variables
    Abstraction na;
    na.params = abs.params;
    na.body = apply_substitution(abs.body, s);
    out.cc.emplace(y, na);
  }
  return out;
}

std::vector<Ptr> obligations_for(const CcPair& pair, const SubstitutionMap& s,
                                 const Goals& goals) {
  std::set<VariableId> dplus;
  for (const auto& g : goals) {
    for (const auto& f : g) collect_free_vars(f, VarSel::DeltaPlus, dplus);
  }
  auto reach = reachable_into(pair.vc, dplus);
  std::vector<Ptr> out;
  for (const auto& [y, abs] : pair.cc) {
    (void)abs;
    if (!s.entries.count(y)) continue;
    if (!reach.count(y)) continue;
    out.push_back(apply_substitution(build_QC(pair, y), s));
  }
  return out;
}

}  // namespace epskit
