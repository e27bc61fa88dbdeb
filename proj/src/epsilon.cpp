#include "epskit/epsilon.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace epskit {

namespace {

// Fresh free-variable names: base name plus letter suffix a, b, c, ...
// skipping names already taken by reserved or previously created variables.
struct FreshNamer {
  std::set<std::string> used;

  explicit FreshNamer(const std::set<VariableId>& reserved) {
    for (const auto& v : reserved) used.insert(v.name);
  }

  std::string next(const std::string& base) {
    for (int i = 0;; ++i) {
      std::string suffix;
      int n = i;
      do {
        suffix = char('a' + n % 26) + suffix;
        n = n / 26 - 1;
      } while (n >= 0);
      std::string cand = base + "_" + suffix;
      if (used.insert(cand).second) return cand;
    }
  }
};

// Finds a choice term with no choice term strictly inside it, leftmost first.
Ptr find_innermost_choice(const Ptr& e) {
  if (e->kind == Kind::Var || e->kind == Kind::Const || e->kind == Kind::Top ||
      e->kind == Kind::Bot)
    return nullptr;
  if (e->a) {
    if (Ptr r = find_innermost_choice(e->a)) return r;
  }
  if (e->b) {
    if (Ptr r = find_innermost_choice(e->b)) return r;
  }
  if (e->kind == Kind::Eps || e->kind == Kind::Iota) return e;
  return nullptr;
}

}  // namespace

ElimResult eliminate_choice_terms(const Goals& goals, const CcPair& start, bool share,
                                  const std::set<VariableId>& reserved) {
  std::set<VariableId> taken = reserved;
  for (const auto& g : goals) {
    for (const auto& f : g) {
      std::set<VariableId> s;
      collect_free_vars(f, VarSel::AllFree, s);
      taken.insert(s.begin(), s.end());
    }
  }
  for (const auto& [y, abs] : start.cc) {
    taken.insert(y);
    std::set<VariableId> s;
    collect_free_vars(abs.body, VarSel::AllFree, s);
    taken.insert(s.begin(), s.end());
  }
  for (const auto& [a, b] : start.vc.edges) {
    taken.insert(a);
    taken.insert(b);
  }
  FreshNamer namer(taken);

  ElimResult res;
  res.goals = goals;
  res.pair = start;
  for (const auto& [y, abs] : start.cc) {
    if (contains_choice(abs.body))
      throw EpskitError("condition body of " + y.str() + " contains choice binders");
  }

  for (int guard = 0; guard < 100000; ++guard) {
    Ptr target;
    for (const auto& g : res.goals) {
      for (const auto& f : g) {
        if ((target = find_innermost_choice(f))) break;
      }
      if (target) break;
    }
    if (!target) break;

    const VariableId& bound = target->var;
    std::vector<VariableId> params = free_bound_vars_ordered(target);
    Type vt;
    for (const auto& p : params) vt.args.push_back(p.type);
    vt.base = bound.type.base;
    VariableId z{namer.next(bound.name), VarKind::DeltaPlus, vt, 0};
    res.introduced.push_back(z);

    std::vector<Ptr> args;
    for (const auto& p : params) args.push_back(mk_var(p));
    Ptr replacement = mk_app(mk_var(z), args);

    Ptr cond;
    Ptr instantiated = subst_var(target->a, bound, replacement);
    if (target->kind == Kind::Eps) {
      cond = instantiated;
    } else {
      // definite description: the condition only bites when the described
      // object is unique
      cond = mk_imp(mk_exunique(bound, target->a), instantiated);
    }

    Abstraction abs{params, cond};
    VarCond edges;
    {
      std::set<VariableId> frees;
      collect_free_vars(cond, VarSel::AllFree, frees);
      frees.erase(z);
      for (const auto& u : frees) edges.add(u, z);
    }
    res.pair.cc.emplace(z, abs);
    res.pair.vc = merge(res.pair.vc, edges);

    bool replaced_one = false;
    for (auto& g : res.goals) {
      for (auto& f : g) {
        if (share) {
          f = replace_all(f, target, replacement);
        } else if (!replaced_one) {
          f = replace_first(f, target, replacement, &replaced_one);
        }
      }
    }
  }

  auto bad = validate_cc(res.pair);
  if (!bad.empty())
    throw EpskitError("choice-term elimination produced an inadmissible pair:\n" +
                      violations_string(bad));
  return res;
}

// ---------------------------------------------------------------------------
// Classical quantifier elimination
// ---------------------------------------------------------------------------

namespace {

Ptr qelim_rewrite(const Ptr& q) {
  if (q->kind == Kind::Exists) {
    return subst_var(q->a, q->var, mk_eps(q->var, q->a));
  }
  if (q->kind == Kind::Forall) {
    Ptr neg = mk_not(q->a);
    return subst_var(q->a, q->var, mk_eps(q->var, neg));
  }
  throw EpskitError("qelim_rewrite: not a quantifier");
}

Ptr inside_out(const Ptr& e, int& steps, std::unordered_map<const Expr*, Ptr>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  Ptr out;
  switch (e->kind) {
    case Kind::Var:
    case Kind::Const:
    case Kind::Top:
    case Kind::Bot:
      out = e;
      break;
    case Kind::ExUnique: {
      out = inside_out(expand_unique_existence(e), steps, memo);
      break;
    }
    default: {
      Ptr a = e->a ? inside_out(e->a, steps, memo) : e->a;
      Ptr b = e->b ? inside_out(e->b, steps, memo) : e->b;
      Ptr n = e;
      if (a != e->a || b != e->b) {
        auto m = std::make_shared<Expr>(*e);
        m->a = a;
        m->b = b;
        n = m;
      }
      if (n->kind == Kind::Exists || n->kind == Kind::Forall) {
        ++steps;
        out = qelim_rewrite(n);
      } else {
        out = n;
      }
    }
  }
  memo[e.get()] = out;
  return out;
}

// Rewrites the leftmost-outermost quantifier occurrence anywhere in the
// term, including inside choice-term bodies.  Returns null when none left.
Ptr outside_in_step(const Ptr& e, bool& done) {
  if (done) return e;
  if (e->kind == Kind::Exists || e->kind == Kind::Forall) {
    done = true;
    return qelim_rewrite(e);
  }
  if (e->kind == Kind::ExUnique) {
    done = true;
    return expand_unique_existence(e);
  }
  switch (e->kind) {
    case Kind::Var:
    case Kind::Const:
    case Kind::Top:
    case Kind::Bot:
      return e;
    default: {
      Ptr a = e->a ? outside_in_step(e->a, done) : e->a;
      Ptr b = (e->b && !done) ? outside_in_step(e->b, done) : e->b;
      if (a == e->a && b == e->b) return e;
      auto m = std::make_shared<Expr>(*e);
      m->a = a;
      m->b = b;
      return m;
    }
  }
}

}  // namespace

Ptr classical_qelim(const Ptr& f, QelimOrder order, int* steps) {
  int count = 0;
  Ptr out;
  if (order == QelimOrder::InsideOut) {
    std::unordered_map<const Expr*, Ptr> memo;
    out = inside_out(f, count, memo);
  } else {
    out = f;
    for (int guard = 0;; ++guard) {
      if (guard > 1000000) throw EpskitError("quantifier elimination exceeded step budget");
      bool done = false;
      Ptr next = outside_in_step(out, done);
      if (!done) break;
      ++count;
      out = next;
    }
  }
  if (steps) *steps = count;
  return out;
}

int nesting_depth(const Ptr& f) {
  std::unordered_map<const Expr*, int> memo;
  std::function<int(const Ptr&)> go = [&](const Ptr& e) -> int {
    auto it = memo.find(e.get());
    if (it != memo.end()) return it->second;
    int da = e->a ? go(e->a) : 0;
    int db = e->b ? go(e->b) : 0;
    int d = std::max(da, db);
    if (e->kind == Kind::Eps || e->kind == Kind::Iota) d += 1;
    memo[e.get()] = d;
    return d;
  };
  return go(f);
}

std::vector<std::pair<Ptr, Ptr>> subordinate_pairs(const Ptr& f) {
  std::vector<std::pair<Ptr, Ptr>> out;
  // collect choice-term nodes in preorder, deduplicated by pointer
  std::vector<Ptr> choice_nodes;
  std::set<const Expr*> seen;
  std::function<void(const Ptr&)> collect = [&](const Ptr& e) {
    if (!seen.insert(e.get()).second) return;
    if (e->kind == Kind::Eps || e->kind == Kind::Iota) choice_nodes.push_back(e);
    if (e->a) collect(e->a);
    if (e->b) collect(e->b);
  };
  collect(f);
  for (const auto& outer : choice_nodes) {
    std::set<const Expr*> inner_seen;
    std::function<void(const Ptr&)> scan = [&](const Ptr& e) {
      if (!inner_seen.insert(e.get()).second) return;
      if ((e->kind == Kind::Eps || e->kind == Kind::Iota) && e != outer) {
        std::set<std::uint64_t> bound;
        std::set<VariableId> fb;
        // free bound variables of the inner occurrence
        for (const auto& v : free_bound_vars(e)) fb.insert(v);
        if (fb.count(outer->var)) out.emplace_back(outer, e);
      }
      if (e->a) scan(e->a);
      if (e->b) scan(e->b);
    };
    scan(outer->a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quantifier removal via variable conditions
// ---------------------------------------------------------------------------

namespace {

struct PrenexHit {
  Ptr node;        // the quantifier node
  bool universal;  // true when the occurrence acts universally
};

// Finds the leftmost prenex-accessible quantifier.  Polarity +1 keeps the
// stated force, -1 flips it; descent stops at <->, equations, atoms and
// binder bodies.
bool find_prenex(const Ptr& e, int pol, PrenexHit& hit) {
  switch (e->kind) {
    case Kind::Forall:
    case Kind::Exists: {
      bool forall = e->kind == Kind::Forall;
      hit.node = e;
      hit.universal = (forall && pol > 0) || (!forall && pol < 0);
      return true;
    }
    case Kind::ExUnique:
      hit.node = e;
      hit.universal = false;  // expanded first; placeholder
      return true;
    case Kind::Not:
      return find_prenex(e->a, -pol, hit);
    case Kind::And:
    case Kind::Or:
      return find_prenex(e->a, pol, hit) || find_prenex(e->b, pol, hit);
    case Kind::Imp:
      return find_prenex(e->a, -pol, hit) || find_prenex(e->b, pol, hit);
    default:
      return false;
  }
}

Ptr rewrite_at(const Ptr& e, const Ptr& node, const Ptr& replacement, bool& done) {
  if (done) return e;
  if (e.get() == node.get()) {
    done = true;
    return replacement;
  }
  switch (e->kind) {
    case Kind::Var:
    case Kind::Const:
    case Kind::Top:
    case Kind::Bot:
      return e;
    default: {
      Ptr a = e->a ? rewrite_at(e->a, node, replacement, done) : e->a;
      Ptr b = (e->b && !done) ? rewrite_at(e->b, node, replacement, done) : e->b;
      if (a == e->a && b == e->b) return e;
      auto m = std::make_shared<Expr>(*e);
      m->a = a;
      m->b = b;
      return m;
    }
  }
}

}  // namespace

VcReduceResult vc_reduction(const Ptr& f, const CcPair& start,
                            const std::set<VariableId>& reserved) {
  std::set<VariableId> taken = reserved;
  {
    std::set<VariableId> s;
    collect_free_vars(f, VarSel::AllFree, s);
    taken.insert(s.begin(), s.end());
  }
  for (const auto& [a, b] : start.vc.edges) {
    taken.insert(a);
    taken.insert(b);
  }
  for (const auto& [y, abs] : start.cc) taken.insert(y);
  FreshNamer namer(taken);

  VcReduceResult res{f, start, {}};
  for (int guard = 0; guard < 100000; ++guard) {
    PrenexHit hit{nullptr, false};
    if (!find_prenex(res.formula, +1, hit)) break;
    if (hit.node->kind == Kind::ExUnique) {
      bool done = false;
      res.formula = rewrite_at(res.formula, hit.node, expand_unique_existence(hit.node), done);
      continue;
    }
    const VariableId& bound = hit.node->var;
    VarKind kind = hit.universal ? VarKind::DeltaMinus : VarKind::Gamma;
    VariableId v{namer.next(bound.name), kind, bound.type, 0};
    res.introduced.push_back(v);
    if (hit.universal) {
      std::set<VariableId> rigid;
      collect_free_vars(res.formula, VarSel::Rigid, rigid);
      for (const auto& r : rigid) res.pair.vc.add(r, v);
    }
    Ptr body = subst_var(hit.node->a, bound, mk_var(v));
    bool done = false;
    res.formula = rewrite_at(res.formula, hit.node, body, done);
  }
  auto bad = validate_cc(res.pair);
  if (!bad.empty())
    throw EpskitError("variable-condition reduction produced an inadmissible pair:\n" +
                      violations_string(bad));
  return res;
}

}  // namespace epskit
