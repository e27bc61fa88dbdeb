#include "epskit/oracle.hpp"

#include <algorithm>

namespace epskit {

bool operator==(const Value& a, const Value& b) {
  if (a.is_fn() != b.is_fn()) return false;
  if (a.is_fn()) return a.fn->table == b.fn->table;
  return a.elem == b.elem;
}

bool operator<(const Value& a, const Value& b) {
  if (a.is_fn() != b.is_fn()) return a.is_fn() < b.is_fn();
  if (a.is_fn()) return a.fn->table < b.fn->table;
  return a.elem < b.elem;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

int expect_elem(const Value& v, const std::string& what) {
  if (v.is_fn()) throw EpskitError(what + " evaluated to a function value");
  return v.elem;
}

Value apply_fn(const Value& f, const Tuple& args, const std::string& what) {
  if (!f.is_fn()) throw EpskitError(what + " applied but not a function value");
  auto it = f.fn->table.find(args);
  if (it == f.fn->table.end()) throw EpskitError(what + " table missing a tuple");
  return Value{it->second, nullptr};
}

}  // namespace

Value eval(const FiniteStructure& st, Valuation& val, const Ptr& e) {
  switch (e->kind) {
    case Kind::Var: {
      auto it = val.m.find(e->var);
      if (it == val.m.end()) throw EpskitError("unvalued variable " + e->var.str());
      return it->second;
    }
    case Kind::Const: {
      if (e->ctype.is_base()) return Value{st.lookup(e->cname, {}), nullptr};
      auto it = st.tables.find(e->cname);
      if (it == st.tables.end()) throw EpskitError("constant not interpreted: " + e->cname);
      auto fv = std::make_shared<FuncVal>();
      fv->table = it->second;
      return Value{-1, fv};
    }
    case Kind::App: {
      std::vector<Ptr> args;
      Ptr head = e;
      while (head->kind == Kind::App) {
        args.push_back(head->b);
        head = head->a;
      }
      std::reverse(args.begin(), args.end());
      Tuple argv;
      for (const auto& a : args)
        argv.push_back(expect_elem(eval(st, val, a), "argument " + to_string(a)));
      if (head->kind == Kind::Const) {
        if (head->ctype.args.size() != args.size())
          throw EpskitError("partial application of " + head->cname + " unsupported");
        return Value{st.lookup(head->cname, argv), nullptr};
      }
      if (head->kind == Kind::Var) {
        if (head->var.type.args.size() != args.size())
          throw EpskitError("partial application of " + head->var.str() + " unsupported");
        Value f = eval(st, val, head);
        if (args.empty()) return f;
        return apply_fn(f, argv, head->var.str());
      }
      if (head->kind == Kind::Lam) {
        Ptr body = head;
        for (const auto& a : args) {
          if (body->kind != Kind::Lam)
            throw EpskitError("over-applied lambda in " + to_string(e));
          body = subst_var(body->a, body->var, a);
        }
        return eval(st, val, body);
      }
      throw EpskitError("unsupported application head in " + to_string(e));
    }
    case Kind::Lam: {
      // tabulate: a function value over the parameters' universes
      std::vector<VariableId> params;
      Ptr body = e;
      while (body->kind == Kind::Lam) {
        params.push_back(body->var);
        body = body->a;
      }
      for (const auto& p : params) {
        if (!p.type.is_base())
          throw EpskitError("lambda over non-base parameter unsupported: " + p.name);
      }
      std::vector<int> dims;
      for (const auto& p : params) dims.push_back(st.universe_size(p.type.base));
      auto fv = std::make_shared<FuncVal>();
      Tuple tup(dims.size(), 0);
      for (;;) {
        for (std::size_t i = 0; i < params.size(); ++i)
          val.m[params[i]] = Value{tup[i], nullptr};
        fv->table[tup] = expect_elem(eval(st, val, body), "lambda body");
        for (const auto& p : params) val.m.erase(p);
        int k = static_cast<int>(dims.size()) - 1;
        while (k >= 0 && ++tup[k] == dims[k]) tup[k--] = 0;
        if (k < 0) break;
      }
      return Value{-1, fv};
    }
    case Kind::Top: return Value{1, nullptr};
    case Kind::Bot: return Value{0, nullptr};
    case Kind::Not: return Value{eval_formula(st, val, e->a) ? 0 : 1, nullptr};
    case Kind::And:
      return Value{eval_formula(st, val, e->a) && eval_formula(st, val, e->b) ? 1 : 0,
                   nullptr};
    case Kind::Or:
      return Value{eval_formula(st, val, e->a) || eval_formula(st, val, e->b) ? 1 : 0,
                   nullptr};
    case Kind::Imp:
      return Value{!eval_formula(st, val, e->a) || eval_formula(st, val, e->b) ? 1 : 0,
                   nullptr};
    case Kind::Iff:
      return Value{eval_formula(st, val, e->a) == eval_formula(st, val, e->b) ? 1 : 0,
                   nullptr};
    case Kind::Eq: {
      Value a = eval(st, val, e->a);
      Value b = eval(st, val, e->b);
      return Value{a == b ? 1 : 0, nullptr};
    }
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExUnique: {
      int n = st.universe_size(e->var.type.base);
      int count = 0;
      bool had = val.m.count(e->var) > 0;
      Value old = had ? val.m[e->var] : Value{};
      for (int k = 0; k < n; ++k) {
        val.m[e->var] = Value{k, nullptr};
        if (eval_formula(st, val, e->a)) ++count;
        if (e->kind == Kind::Exists && count > 0) break;
        if (e->kind == Kind::Forall && count <= k) break;
      }
      if (had) val.m[e->var] = old; else val.m.erase(e->var);
      bool res;
      if (e->kind == Kind::Forall) res = count == n;
      else if (e->kind == Kind::Exists) res = count > 0;
      else res = count == 1;
      // the early-exit above breaks the count for Forall; recompute cleanly
      if (e->kind == Kind::Forall && count != n) res = false;
      return Value{res ? 1 : 0, nullptr};
    }
    case Kind::Eps:
    case Kind::Iota:
      throw EpskitError("choice terms must be eliminated before evaluation: " + to_string(e));
  }
  throw EpskitError("unreachable eval");
}

bool eval_formula(const FiniteStructure& st, Valuation& val, const Ptr& f) {
  Value v = eval(st, val, f);
  if (v.is_fn()) throw EpskitError("formula evaluated to a function value");
  return v.elem == 1;
}

bool sequent_true(const FiniteStructure& st, Valuation& val, const Sequent& s) {
  for (const auto& f : s) {
    if (eval_formula(st, val, f)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Value spaces
// ---------------------------------------------------------------------------

std::vector<Value> value_space(const FiniteStructure& st, const Type& t) {
  std::vector<Value> out;
  if (t.is_base()) {
    int n = st.universe_size(t.base);
    for (int k = 0; k < n; ++k) out.push_back(Value{k, nullptr});
    return out;
  }
  std::vector<int> dims;
  for (const auto& a : t.args) {
    if (!a.is_base())
      throw EpskitError("value space for higher-order argument types unsupported: " + t.str());
    dims.push_back(st.universe_size(a.base));
  }
  int res = st.universe_size(t.base);
  std::vector<Tuple> keys;
  Tuple tup(dims.size(), 0);
  for (;;) {
    keys.push_back(tup);
    int k = static_cast<int>(dims.size()) - 1;
    while (k >= 0 && ++tup[k] == dims[k]) tup[k--] = 0;
    if (k < 0) break;
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    total *= static_cast<std::uint64_t>(res);
    if (total > 1000000ULL)
      throw EpskitError("function value space too large for type " + t.str());
  }
  std::vector<int> assign(keys.size(), 0);
  for (;;) {
    auto fv = std::make_shared<FuncVal>();
    for (std::size_t i = 0; i < keys.size(); ++i) fv->table[keys[i]] = assign[i];
    out.push_back(Value{-1, fv});
    int k = static_cast<int>(keys.size()) - 1;
    while (k >= 0 && ++assign[k] == res) assign[k--] = 0;
    if (k < 0) break;
    if (keys.empty()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Raising tables
// ---------------------------------------------------------------------------

VarCond s_relation(const RaisingTable& t) {
  VarCond out;
  for (const auto& [target, entry] : t.entries) {
    for (const auto& s : entry.sources) out.add(s, target);
  }
  return out;
}

Value raising_value(const FiniteStructure& st, const RaisingEntry& entry,
                    const Valuation& base) {
  (void)st;
  Tuple key;
  for (const auto& s : entry.sources) {
    auto it = base.m.find(s);
    if (it == base.m.end()) throw EpskitError("raising source unvalued: " + s.str());
    if (it->second.is_fn())
      throw EpskitError("raising source has a function value: " + s.str());
    key.push_back(it->second.elem);
  }
  auto jt = entry.table.find(key);
  if (jt == entry.table.end()) throw EpskitError("raising table is not total");
  return jt->second;
}

Valuation assemble(const FiniteStructure& st, const Valuation& base,
                   const RaisingTable& pi, const RaisingTable& e) {
  Valuation val = base;
  for (const auto& [y, entry] : pi.entries) {
    val.m[y] = raising_value(st, entry, base);
  }
  for (const auto& [x, entry] : e.entries) {
    val.m[x] = raising_value(st, entry, val);
  }
  return val;
}

namespace {

std::vector<std::vector<VariableId>> subsets_of(const std::vector<VariableId>& pool) {
  std::vector<std::vector<VariableId>> out;
  std::size_t n = pool.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<VariableId> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) s.push_back(pool[i]);
    }
    out.push_back(s);
  }
  // order by size then lexicographically, so smaller source sets come first
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

std::vector<Tuple> domain_tuples(const FiniteStructure& st,
                                 const std::vector<VariableId>& sources) {
  std::vector<int> dims;
  for (const auto& s : sources) {
    if (!s.type.is_base())
      throw EpskitError("raising source must be base-typed: " + s.str());
    dims.push_back(st.universe_size(s.type.base));
  }
  std::vector<Tuple> keys;
  Tuple tup(dims.size(), 0);
  for (;;) {
    keys.push_back(tup);
    int k = static_cast<int>(dims.size()) - 1;
    while (k >= 0 && ++tup[k] == dims[k]) tup[k--] = 0;
    if (k < 0) break;
  }
  return keys;
}

}  // namespace

void for_each_raising(const FiniteStructure& st, const std::vector<VariableId>& targets,
                      const std::vector<VariableId>& pool, const VarCond& base_rel,
                      const OracleLimits& lim,
                      const std::function<bool(const RaisingTable&)>& fn) {
  if (static_cast<int>(targets.size()) > lim.max_class_vars)
    throw EpskitError("too many raised variables (cap " +
                      std::to_string(lim.max_class_vars) + ")");
  if (pool.size() > 12) throw EpskitError("too many source variables");
  for (const auto& [sort, elems] : st.universes) {
    if (static_cast<int>(elems.size()) > lim.max_universe)
      throw EpskitError("universe of sort " + sort + " exceeds cap " +
                        std::to_string(lim.max_universe));
  }

  std::vector<VariableId> ts = targets;
  std::sort(ts.begin(), ts.end());
  // base-typed sources only
  std::vector<VariableId> basepool;
  for (const auto& v : pool) {
    if (v.type.is_base()) basepool.push_back(v);
  }
  std::sort(basepool.begin(), basepool.end());
  auto subsets = subsets_of(basepool);

  if (ts.empty()) {
    fn(RaisingTable{});
    return;
  }

  std::vector<std::size_t> choose(ts.size(), 0);
  for (;;) {
    // build the candidate semantical relation and test acyclicity
    VarCond rel = base_rel;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (const auto& s : subsets[choose[i]]) rel.add(s, ts[i]);
    }
    if (is_acyclic(rel)) {
      // enumerate every total table for this subset choice
      std::vector<std::pair<int, Tuple>> cells;  // (target index, key)
      std::vector<std::vector<Tuple>> keys(ts.size());
      std::vector<std::vector<Value>> spaces(ts.size());
      std::uint64_t combos = 1;
      bool feasible = true;
      for (std::size_t i = 0; i < ts.size(); ++i) {
        keys[i] = domain_tuples(st, subsets[choose[i]]);
        spaces[i] = value_space(st, ts[i].type);
        for (std::size_t k = 0; k < keys[i].size(); ++k) {
          cells.emplace_back(static_cast<int>(i), keys[i][k]);
          combos *= static_cast<std::uint64_t>(spaces[i].size());
          if (combos > lim.max_combinations)
            throw EpskitError("raising enumeration too large (cap " +
                              std::to_string(lim.max_combinations) + ")");
        }
      }
      if (feasible) {
        std::vector<std::size_t> assign(cells.size(), 0);
        for (;;) {
          RaisingTable table;
          for (std::size_t i = 0; i < ts.size(); ++i) {
            RaisingEntry entry;
            entry.sources = subsets[choose[i]];
            table.entries[ts[i]] = entry;
          }
          for (std::size_t c = 0; c < cells.size(); ++c) {
            auto [ti, key] = cells[c];
            table.entries[ts[ti]].table[key] = spaces[ti][assign[c]];
          }
          if (!fn(table)) return;
          int c = static_cast<int>(cells.size()) - 1;
          while (c >= 0 && ++assign[c] == spaces[cells[c].first].size()) assign[c--] = 0;
          if (c < 0) break;
          if (cells.empty()) break;
        }
      }
    }
    int i = static_cast<int>(ts.size()) - 1;
    while (i >= 0 && ++choose[i] == subsets.size()) choose[i--] = 0;
    if (i < 0) break;
  }
}

std::uint64_t count_raisings(const FiniteStructure& st,
                             const std::vector<VariableId>& targets,
                             const std::vector<VariableId>& pool, const VarCond& base_rel,
                             const OracleLimits& lim) {
  std::uint64_t n = 0;
  for_each_raising(st, targets, pool, base_rel, lim, [&](const RaisingTable&) {
    ++n;
    return true;
  });
  return n;
}

// ---------------------------------------------------------------------------
// Compatibility and validity
// ---------------------------------------------------------------------------

namespace {

// iterate all assignments of the given variables over their value spaces
bool for_each_assignment(const FiniteStructure& st, const std::vector<VariableId>& vars,
                         const std::function<bool(Valuation&)>& fn) {
  std::vector<std::vector<Value>> spaces;
  for (const auto& v : vars) spaces.push_back(value_space(st, v.type));
  std::vector<std::size_t> idx(vars.size(), 0);
  Valuation val;
  for (;;) {
    for (std::size_t i = 0; i < vars.size(); ++i) val.m[vars[i]] = spaces[i][idx[i]];
    if (!fn(val)) return false;
    int k = static_cast<int>(vars.size()) - 1;
    while (k >= 0 && ++idx[k] == spaces[k].size()) idx[k--] = 0;
    if (k < 0) break;
    if (vars.empty()) break;
  }
  return true;
}

}  // namespace

bool is_compatible(const FiniteStructure& st, const CcPair& pair, const RaisingTable& e,
                   const RaisingTable& pi, const std::vector<VariableId>& delta_minus,
                   std::string* why) {
  VarCond all = merge(merge(pair.vc, s_relation(e)), s_relation(pi));
  if (auto cyc = find_cycle(all)) {
    if (why) *why = "cycle: " + cycle_string(*cyc);
    return false;
  }
  for (const auto& [y, abs] : pair.cc) {
    if (!pi.entries.count(y)) {
      if (why) *why = "no committed choice for " + y.str();
      return false;
    }
    bool ok = for_each_assignment(st, delta_minus, [&](Valuation& tau) {
      // committed values of all delta-plus variables at this tau
      Valuation delta = tau;
      for (const auto& [z, entry] : pi.entries) {
        delta.m[z] = raising_value(st, entry, tau);
      }
      Value committed = delta.m[y];
      std::vector<VariableId> params = abs.params;
      return for_each_assignment(st, params, [&](Valuation& chi) {
        Valuation base = delta;
        for (const auto& [p, v] : chi.m) base.m[p] = v;
        // consequent: body under the committed choice
        Valuation with_e = base;
        for (const auto& [x, entry] : e.entries) {
          with_e.m[x] = raising_value(st, entry, base);
        }
        bool committed_true = eval_formula(st, with_e, abs.body);
        if (committed_true) return true;
        // antecedent: does any value for y make the body true?
        for (const auto& eta : value_space(st, y.type)) {
          if (eta == committed) continue;
          Valuation alt = base;
          alt.m[y] = eta;
          Valuation alt_e = alt;
          for (const auto& [x, entry] : e.entries) {
            alt_e.m[x] = raising_value(st, entry, alt);
          }
          if (eval_formula(st, alt_e, abs.body)) return false;  // witness exists
        }
        return true;
      });
    });
    if (!ok) {
      if (why)
        *why = "condition of " + y.str() + " is satisfiable but the committed choice "
               "misses it";
      return false;
    }
  }
  return true;
}

namespace {

bool goals_hold(const FiniteStructure& st, const Goals& goals,
                const std::vector<VariableId>& delta_minus, const RaisingTable& pi,
                const RaisingTable& e) {
  return for_each_assignment(st, delta_minus, [&](Valuation& tau) {
    Valuation val = assemble(st, tau, pi, e);
    for (const auto& g : goals) {
      if (!sequent_true(st, val, g)) return false;
    }
    return true;
  });
}

struct ProblemVars {
  std::vector<VariableId> gammas, dminus, dplus;
};

ProblemVars problem_vars(const Goals& goals, const CcPair& pair, const OracleLimits& lim) {
  std::set<VariableId> g, dm, dp;
  auto scan = [&](const Ptr& f) {
    collect_free_vars(f, VarSel::Gamma, g);
    collect_free_vars(f, VarSel::DeltaMinus, dm);
    collect_free_vars(f, VarSel::DeltaPlus, dp);
  };
  for (const auto& seq : goals) {
    for (const auto& f : seq) scan(f);
  }
  for (const auto& [y, abs] : pair.cc) {
    dp.insert(y);
    scan(abs.body);
  }
  ProblemVars out{{g.begin(), g.end()}, {dm.begin(), dm.end()}, {dp.begin(), dp.end()}};
  if (static_cast<int>(out.gammas.size()) > lim.max_class_vars)
    throw EpskitError("too many free existential variables (cap " +
                      std::to_string(lim.max_class_vars) + ")");
  if (static_cast<int>(out.dminus.size()) > lim.max_class_vars)
    throw EpskitError("too many weak universal variables (cap " +
                      std::to_string(lim.max_class_vars) + ")");
  if (static_cast<int>(out.dplus.size()) > lim.max_class_vars)
    throw EpskitError("too many strong universal variables (cap " +
                      std::to_string(lim.max_class_vars) + ")");
  return out;
}

std::string table_string(const FiniteStructure& st, const RaisingTable& t) {
  std::string out;
  for (const auto& [target, entry] : t.entries) {
    out += target.str() + "(";
    for (std::size_t i = 0; i < entry.sources.size(); ++i) {
      if (i) out += ",";
      out += entry.sources[i].str();
    }
    out += "): {";
    bool first = true;
    for (const auto& [key, v] : entry.table) {
      if (!first) out += ", ";
      first = false;
      out += "(";
      for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(key[i]);
      }
      out += ")->";
      if (v.is_fn()) {
        out += "{";
        bool f2 = true;
        for (const auto& [k2, r2] : v.fn->table) {
          if (!f2) out += ",";
          f2 = false;
          for (std::size_t i = 0; i < k2.size(); ++i) out += std::to_string(k2[i]);
          out += ":" + std::to_string(r2);
        }
        out += "}";
      } else {
        out += std::to_string(v.elem);
      }
    }
    out += "} ";
  }
  (void)st;
  return out.empty() ? "(empty)" : out;
}

}  // namespace

OracleVerdict is_r_valid(const Goals& goals, const VarCond& r, const FiniteStructure& st,
                         const OracleLimits& lim) {
  CcPair nopair;
  auto vars = problem_vars(goals, nopair, lim);
  if (!vars.dplus.empty())
    throw EpskitError("strong universal variables present; use the committed-choice check");
  OracleVerdict verdict;
  std::vector<VariableId> pool = vars.dminus;
  for_each_raising(st, vars.gammas, pool, r, lim, [&](const RaisingTable& e) {
    if (goals_hold(st, goals, vars.dminus, RaisingTable{}, e)) {
      verdict.valid = true;
      verdict.detail = "witness e: " + table_string(st, e);
      return false;
    }
    return true;
  });
  if (!verdict.valid) verdict.detail = "no gamma layer works";
  return verdict;
}

OracleVerdict is_cr_valid(const Goals& goals, const CcPair& pair, const FiniteStructure& st,
                          PiVariant variant, const OracleLimits& lim) {
  auto vars = problem_vars(goals, pair, lim);
  OracleVerdict verdict;
  std::vector<VariableId> epool;
  epool.insert(epool.end(), vars.dminus.begin(), vars.dminus.end());
  epool.insert(epool.end(), vars.dplus.begin(), vars.dplus.end());

  for_each_raising(st, vars.gammas, epool, pair.vc, lim, [&](const RaisingTable& e) {
    VarCond with_e = merge(pair.vc, s_relation(e));
    if (variant == PiVariant::Some) {
      bool found = false;
      for_each_raising(st, vars.dplus, vars.dminus, with_e, lim,
                       [&](const RaisingTable& pi) {
        if (!is_compatible(st, pair, e, pi, vars.dminus)) return true;
        if (goals_hold(st, goals, vars.dminus, pi, e)) {
          found = true;
          verdict.detail = "witness e: " + table_string(st, e) +
                           " pi: " + table_string(st, pi);
          return false;
        }
        return true;
      });
      if (found) {
        verdict.valid = true;
        return false;
      }
      return true;
    }
    // Any: every compatible pi must satisfy the goals
    bool all_ok = true;
    for_each_raising(st, vars.dplus, vars.dminus, with_e, lim, [&](const RaisingTable& pi) {
      if (!is_compatible(st, pair, e, pi, vars.dminus)) return true;
      if (!goals_hold(st, goals, vars.dminus, pi, e)) {
        all_ok = false;
        return false;
      }
      return true;
    });
    if (all_ok) {
      verdict.valid = true;
      verdict.detail = "witness e: " + table_string(st, e);
      return false;
    }
    return true;
  });
  if (!verdict.valid)
    verdict.detail = variant == PiVariant::Some
                         ? "no gamma layer admits a compatible committed choice"
                         : "every gamma layer has a compatible committed choice that fails";
  return verdict;
}

OracleVerdict reduces_check(const Goals& g0, const Goals& g1, const CcPair& pair,
                            const FiniteStructure& st, const OracleLimits& lim) {
  Goals both = g0;
  both.insert(both.end(), g1.begin(), g1.end());
  auto vars = problem_vars(both, pair, lim);
  OracleVerdict verdict{true, "reduction holds"};
  std::vector<VariableId> epool;
  epool.insert(epool.end(), vars.dminus.begin(), vars.dminus.end());
  epool.insert(epool.end(), vars.dplus.begin(), vars.dplus.end());

  for_each_raising(st, vars.gammas, epool, pair.vc, lim, [&](const RaisingTable& e) {
    VarCond with_e = merge(pair.vc, s_relation(e));
    bool ok = true;
    for_each_raising(st, vars.dplus, vars.dminus, with_e, lim, [&](const RaisingTable& pi) {
      if (!is_compatible(st, pair, e, pi, vars.dminus)) return true;
      if (goals_hold(st, g1, vars.dminus, pi, e) &&
          !goals_hold(st, g0, vars.dminus, pi, e)) {
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) {
      verdict.valid = false;
      verdict.detail = "counterexample e: " + table_string(st, e);
      return false;
    }
    return true;
  });
  return verdict;
}

// ---------------------------------------------------------------------------
// Axiom instances
// ---------------------------------------------------------------------------

AxiomInstance axiom_instance(const std::string& axiom, const Signature& sig) {
  Type i = base_type("i");
  auto P = [&](Ptr t) { return mk_app(mk_const("P", sig.consts.at("P")), {t}); };
  auto boundv = [&](const std::string& n) {
    return VariableId{n, VarKind::Bound, i, fresh_uid()};
  };
  auto dplus = [&](const std::string& n) { return VariableId{n, VarKind::DeltaPlus, i, 0}; };

  AxiomInstance out;
  if (axiom == "eps0") {
    VariableId x0 = dplus("x0");
    VariableId x = boundv("x");
    out.pair.cc[x0] = Abstraction{{}, P(mk_var(x0))};
    out.goals = {{mk_imp(mk_exists(x, P(mk_var(x))), P(mk_var(x0)))}};
  } else if (axiom == "iota0") {
    VariableId x0 = dplus("x0");
    VariableId x = boundv("x");
    VariableId z = boundv("z");
    Ptr cond = mk_imp(mk_exunique(z, P(mk_var(z))), P(mk_var(x0)));
    out.pair.cc[x0] = Abstraction{{}, cond};
    out.goals = {{mk_imp(mk_exunique(x, P(mk_var(x))), P(mk_var(x0)))}};
  } else if (axiom == "mu0") {
    if (!sig.consts.count("le")) throw EpskitError("axiom mu0 needs le : i > i > o");
    auto le = [&](Ptr a, Ptr b) { return mk_app(mk_const("le", sig.consts.at("le")), {a, b}); };
    VariableId m = dplus("m");
    VariableId x = boundv("x");
    VariableId y = boundv("y");
    Ptr minimal = mk_and(P(mk_var(m)),
                         mk_forall(y, mk_imp(P(mk_var(y)), le(mk_var(m), mk_var(y)))));
    out.pair.cc[m] = Abstraction{{}, minimal};
    out.goals = {{mk_imp(mk_exists(x, P(mk_var(x))), minimal)}};
  } else if (axiom == "E2" || axiom == "vext") {
    if (!sig.consts.count("Q")) throw EpskitError("axiom needs Q : i > o");
    auto Q = [&](Ptr t) { return mk_app(mk_const("Q", sig.consts.at("Q")), {t}); };
    VariableId x0 = dplus("x0");
    VariableId x1 = dplus("x1");
    out.pair.cc[x0] = Abstraction{{}, P(mk_var(x0))};
    out.pair.cc[x1] = Abstraction{{}, Q(mk_var(x1))};
    VariableId x = boundv("x");
    Ptr ante;
    if (axiom == "E2") {
      ante = mk_forall(x, mk_iff(P(mk_var(x)), Q(mk_var(x))));
    } else {
      VariableId y = boundv("y");
      Ptr pa = mk_imp(mk_exists(y, P(mk_var(y))), P(mk_var(x)));
      Ptr qa = mk_imp(mk_exists(y, Q(mk_var(y))), Q(mk_var(x)));
      ante = mk_forall(x, mk_iff(pa, qa));
    }
    out.goals = {{mk_imp(ante, mk_eq(mk_var(x0), mk_var(x1)))}};
  } else if (axiom == "eps5") {
    VariableId xb = dplus("x0");
    VariableId xt = dplus("x1");
    out.pair.cc[xb] = Abstraction{{}, mk_bot()};
    out.pair.cc[xt] = Abstraction{{}, mk_top()};
    out.goals = {{mk_eq(mk_var(xb), mk_var(xt))}};
  } else {
    throw EpskitError("unknown axiom: " + axiom);
  }
  auto bad = validate_cc(out.pair);
  if (!bad.empty()) throw EpskitError("axiom instance invalid: " + violations_string(bad));
  return out;
}

OracleVerdict check_axiom(const std::string& axiom, const FiniteStructure& st,
                          PiVariant variant, const OracleLimits& lim) {
  Signature sig;
  sig.sorts.insert("i");
  Type i = base_type("i");
  Type pred{{i}, kBoolSort};
  sig.consts["P"] = pred;
  if (st.tables.count("Q")) sig.consts["Q"] = pred;
  if (st.tables.count("le")) sig.consts["le"] = Type{{i, i}, kBoolSort};
  if (!st.tables.count("P")) throw EpskitError("axiom checks need P : i > o interpreted");
  AxiomInstance inst = axiom_instance(axiom, sig);
  return is_cr_valid(inst.goals, inst.pair, st, variant, lim);
}

}  // namespace epskit
