#include "epskit/ast.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace epskit {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

std::string Type::str() const {
  std::string out;
  for (const auto& a : args) {
    if (a.is_base()) {
      out += a.base + " > ";
    } else {
      out += "(" + a.str() + ") > ";
    }
  }
  out += base;
  return out;
}

bool operator==(const Type& a, const Type& b) {
  return a.base == b.base && a.args == b.args;
}

bool operator<(const Type& a, const Type& b) {
  if (a.base != b.base) return a.base < b.base;
  return a.args < b.args;
}

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------

std::string kind_suffix(VarKind k) {
  switch (k) {
    case VarKind::Bound: return "";
    case VarKind::Gamma: return "^g";
    case VarKind::DeltaMinus: return "^d-";
    case VarKind::DeltaPlus: return "^d+";
  }
  return "";
}

bool operator==(const VariableId& a, const VariableId& b) {
  return a.uid == b.uid && a.kind == b.kind && a.name == b.name && a.type == b.type;
}

bool operator<(const VariableId& a, const VariableId& b) {
  if (a.name != b.name) return a.name < b.name;
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.uid != b.uid) return a.uid < b.uid;
  return a.type < b.type;
}

std::uint64_t fresh_uid() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Ptr mk_var(VariableId v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->var = std::move(v);
  return e;
}

Ptr mk_const(std::string name, Type t) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Const;
  e->cname = std::move(name);
  e->ctype = std::move(t);
  return e;
}

Ptr mk_app(Ptr f, Ptr x) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::App;
  e->a = std::move(f);
  e->b = std::move(x);
  return e;
}

Ptr mk_app(Ptr f, const std::vector<Ptr>& xs) {
  Ptr out = std::move(f);
  for (const auto& x : xs) out = mk_app(out, x);
  return out;
}

Ptr mk_binder(Kind k, VariableId v, Ptr body) {
  if (v.kind != VarKind::Bound)
    throw EpskitError("binder variable must be bound-kind: " + v.str());
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->var = std::move(v);
  e->a = std::move(body);
  return e;
}

Ptr mk_top() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Top;
  return e;
}

Ptr mk_bot() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Bot;
  return e;
}

Ptr mk_not(Ptr a) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Not;
  e->a = std::move(a);
  return e;
}

Ptr mk_bin(Kind k, Ptr a, Ptr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->a = std::move(a);
  e->b = std::move(b);
  return e;
}

Ptr mk_and_all(const std::vector<Ptr>& fs) {
  if (fs.empty()) return mk_top();
  Ptr out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = mk_and(out, fs[i]);
  return out;
}

Ptr conjugate(const Ptr& f) {
  if (f->kind == Kind::Not) return f->a;
  return mk_not(f);
}

// ---------------------------------------------------------------------------
// Typing
// ---------------------------------------------------------------------------

Type type_of(const Ptr& e) {
  switch (e->kind) {
    case Kind::Var: return e->var.type;
    case Kind::Const: return e->ctype;
    case Kind::App: {
      Type ft = type_of(e->a);
      if (ft.args.empty())
        throw EpskitError("application head of base type: " + to_string(e));
      Type at = type_of(e->b);
      if (!(at == ft.args.front()))
        throw EpskitError("argument type mismatch in " + to_string(e) + ": expected " +
                          ft.args.front().str() + ", got " + at.str());
      Type rt;
      rt.args.assign(ft.args.begin() + 1, ft.args.end());
      rt.base = ft.base;
      return rt;
    }
    case Kind::Lam: {
      Type bt = type_of(e->a);
      Type out;
      out.args.push_back(e->var.type);
      out.args.insert(out.args.end(), bt.args.begin(), bt.args.end());
      out.base = bt.base;
      return out;
    }
    case Kind::Eps:
    case Kind::Iota: {
      if (!e->var.type.is_base())
        throw EpskitError("choice binder over non-base type unsupported: " + e->var.name);
      if (!(type_of(e->a) == bool_type()))
        throw EpskitError("choice binder body must be a formula");
      return e->var.type;
    }
    case Kind::Top:
    case Kind::Bot:
      return bool_type();
    case Kind::Not:
      if (!(type_of(e->a) == bool_type())) throw EpskitError("~ applied to a non-formula");
      return bool_type();
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Iff:
      if (!(type_of(e->a) == bool_type()) || !(type_of(e->b) == bool_type()))
        throw EpskitError("connective applied to a non-formula");
      return bool_type();
    case Kind::Eq:
      if (!(type_of(e->a) == type_of(e->b)))
        throw EpskitError("equation between different types: " + to_string(e));
      return bool_type();
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExUnique: {
      if (!e->var.type.is_base())
        throw EpskitError("quantifier over non-base type unsupported: " + e->var.name);
      if (!(type_of(e->a) == bool_type()))
        throw EpskitError("quantifier body must be a formula");
      return bool_type();
    }
  }
  throw EpskitError("unreachable kind");
}

bool is_formula(const Ptr& e) { return type_of(e) == bool_type(); }

// ---------------------------------------------------------------------------
// Variable collection
// ---------------------------------------------------------------------------

static bool sel_matches(VarSel sel, VarKind k) {
  switch (sel) {
    case VarSel::AllFree: return is_free_kind(k);
    case VarSel::Gamma: return k == VarKind::Gamma;
    case VarSel::Delta: return k == VarKind::DeltaMinus || k == VarKind::DeltaPlus;
    case VarSel::DeltaMinus: return k == VarKind::DeltaMinus;
    case VarSel::DeltaPlus: return k == VarKind::DeltaPlus;
    case VarSel::GammaDeltaPlus:
    case VarSel::Rigid:
      return k == VarKind::Gamma || k == VarKind::DeltaPlus;
  }
  return false;
}

void collect_free_vars(const Ptr& e, VarSel sel, std::set<VariableId>& out) {
  switch (e->kind) {
    case Kind::Var:
      if (sel_matches(sel, e->var.kind)) out.insert(e->var);
      return;
    case Kind::Const:
    case Kind::Top:
    case Kind::Bot:
      return;
    default:
      if (e->a) collect_free_vars(e->a, sel, out);
      if (e->b) collect_free_vars(e->b, sel, out);
      return;
  }
}

std::vector<VariableId> free_vars(const Ptr& e, VarSel sel) {
  std::set<VariableId> s;
  collect_free_vars(e, sel, s);
  return {s.begin(), s.end()};
}

static void collect_free_bound(const Ptr& e, std::set<std::uint64_t>& bound,
                               std::set<VariableId>& out, std::vector<VariableId>* ordered) {
  switch (e->kind) {
    case Kind::Var:
      if (e->var.kind == VarKind::Bound && !bound.count(e->var.uid)) {
        if (ordered && !out.count(e->var)) ordered->push_back(e->var);
        out.insert(e->var);
      }
      return;
    case Kind::Const:
    case Kind::Top:
    case Kind::Bot:
      return;
    case Kind::Lam:
    case Kind::Eps:
    case Kind::Iota:
    case Kind::Forall:
    case Kind::Exists:
    case Kind::ExUnique: {
      bool inserted = bound.insert(e->var.uid).second;
      collect_free_bound(e->a, bound, out, ordered);
      if (inserted) bound.erase(e->var.uid);
      return;
    }
    default:
      if (e->a) collect_free_bound(e->a, bound, out, ordered);
      if (e->b) collect_free_bound(e->b, bound, out, ordered);
      return;
  }
}

std::set<VariableId> free_bound_vars(const Ptr& e) {
  std::set<std::uint64_t> bound;
  std::set<VariableId> out;
  collect_free_bound(e, bound, out, nullptr);
  return out;
}

std::vector<VariableId> free_bound_vars_ordered(const Ptr& e) {
  std::set<std::uint64_t> bound;
  std::set<VariableId> out;
  std::vector<VariableId> ordered;
  collect_free_bound(e, bound, out, &ordered);
  return ordered;
}

// ---------------------------------------------------------------------------
// Alpha equality and hashing (de Bruijn comparison of binder positions)
// ---------------------------------------------------------------------------

static bool is_binder(Kind k) {
  return k == Kind::Lam || k == Kind::Eps || k == Kind::Iota || k == Kind::Forall ||
         k == Kind::Exists || k == Kind::ExUnique;
}

static bool alpha_eq_rec(const Ptr& a, const Ptr& b, std::map<std::uint64_t, int>& da,
                         std::map<std::uint64_t, int>& db, int depth) {
  if (a.get() == b.get() && da.empty() && db.empty()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Kind::Var: {
      if (a->var.kind != b->var.kind) return false;
      if (a->var.kind == VarKind::Bound) {
        auto ia = da.find(a->var.uid);
        auto ib = db.find(b->var.uid);
        if (ia != da.end() || ib != db.end()) {
          return ia != da.end() && ib != db.end() && ia->second == ib->second;
        }
        return a->var.uid == b->var.uid && a->var.type == b->var.type;
      }
      return a->var == b->var;
    }
    case Kind::Const:
      return a->cname == b->cname && a->ctype == b->ctype;
    case Kind::Top:
    case Kind::Bot:
      return true;
    default:
      break;
  }
  if (is_binder(a->kind)) {
    if (!(a->var.type == b->var.type)) return false;
    auto sa = da.find(a->var.uid);
    auto sb = db.find(b->var.uid);
    int olda = sa == da.end() ? -1 : sa->second;
    int oldb = sb == db.end() ? -1 : sb->second;
    da[a->var.uid] = depth;
    db[b->var.uid] = depth;
    bool ok = alpha_eq_rec(a->a, b->a, da, db, depth + 1);
    if (olda < 0) da.erase(a->var.uid); else da[a->var.uid] = olda;
    if (oldb < 0) db.erase(b->var.uid); else db[b->var.uid] = oldb;
    return ok;
  }
  if (bool(a->a) != bool(b->a) || bool(a->b) != bool(b->b)) return false;
  if (a->a && !alpha_eq_rec(a->a, b->a, da, db, depth)) return false;
  if (a->b && !alpha_eq_rec(a->b, b->b, da, db, depth)) return false;
  return true;
}

bool alpha_equal(const Ptr& a, const Ptr& b) {
  std::map<std::uint64_t, int> da, db;
  return alpha_eq_rec(a, b, da, db, 0);
}

static void hash_mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

static std::size_t alpha_hash_rec(const Ptr& e, std::map<std::uint64_t, int>& depths,
                                  int depth) {
  std::size_t h = static_cast<std::size_t>(e->kind) * 1099511628211ULL;
  switch (e->kind) {
    case Kind::Var: {
      hash_mix(h, static_cast<std::size_t>(e->var.kind));
      if (e->var.kind == VarKind::Bound) {
        auto it = depths.find(e->var.uid);
        if (it != depths.end()) {
          hash_mix(h, static_cast<std::size_t>(it->second) + 17);
        } else {
          hash_mix(h, std::hash<std::uint64_t>{}(e->var.uid));
        }
      } else {
        hash_mix(h, std::hash<std::string>{}(e->var.name));
        hash_mix(h, std::hash<std::string>{}(e->var.type.str()));
      }
      return h;
    }
    case Kind::Const:
      hash_mix(h, std::hash<std::string>{}(e->cname));
      return h;
    case Kind::Top:
    case Kind::Bot:
      return h;
    default:
      break;
  }
  if (is_binder(e->kind)) {
    hash_mix(h, std::hash<std::string>{}(e->var.type.str()));
    auto it = depths.find(e->var.uid);
    int old = it == depths.end() ? -1 : it->second;
    depths[e->var.uid] = depth;
    hash_mix(h, alpha_hash_rec(e->a, depths, depth + 1));
    if (old < 0) depths.erase(e->var.uid); else depths[e->var.uid] = old;
    return h;
  }
  if (e->a) hash_mix(h, alpha_hash_rec(e->a, depths, depth));
  if (e->b) hash_mix(h, alpha_hash_rec(e->b, depths, depth));
  return h;
}

std::size_t alpha_hash(const Ptr& e) {
  std::map<std::uint64_t, int> depths;
  return alpha_hash_rec(e, depths, 0);
}

// ---------------------------------------------------------------------------
// Substitution and rewriting
// ---------------------------------------------------------------------------

static Ptr rebuild(const Ptr& e, const Ptr& a, const Ptr& b) {
  if (a == e->a && b == e->b) return e;
  auto n = std::make_shared<Expr>(*e);
  n->a = a;
  n->b = b;
  return n;
}

Ptr subst_var(const Ptr& e, const VariableId& v, const Ptr& t) {
  std::unordered_map<const Expr*, Ptr> memo;
  std::function<Ptr(const Ptr&)> go = [&](const Ptr& n) -> Ptr {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    Ptr out;
    switch (n->kind) {
      case Kind::Var:
        out = (n->var == v) ? t : n;
        break;
      case Kind::Const:
      case Kind::Top:
      case Kind::Bot:
        out = n;
        break;
      default: {
        if (is_binder(n->kind) && n->var == v) {
          out = n;  // shadowed (same uid)
        } else {
          Ptr a = n->a ? go(n->a) : n->a;
          Ptr b = n->b ? go(n->b) : n->b;
          out = rebuild(n, a, b);
        }
      }
    }
    memo[n.get()] = out;
    return out;
  };
  return go(e);
}

Ptr replace_all(const Ptr& e, const Ptr& pat, const Ptr& rep, int* count) {
  std::unordered_map<const Expr*, Ptr> memo;
  std::function<Ptr(const Ptr&)> go = [&](const Ptr& n) -> Ptr {
    auto it = memo.find(n.get());
    if (it != memo.end()) {
      // a memoized replacement still counts per occurrence
      if (count && it->second == rep && n->kind == pat->kind && alpha_equal(n, pat)) ++*count;
      return it->second;
    }
    Ptr out;
    if (n->kind == pat->kind && alpha_equal(n, pat)) {
      if (count) ++*count;
      out = rep;
    } else {
      switch (n->kind) {
        case Kind::Var:
        case Kind::Const:
        case Kind::Top:
        case Kind::Bot:
          out = n;
          break;
        default: {
          Ptr a = n->a ? go(n->a) : n->a;
          Ptr b = n->b ? go(n->b) : n->b;
          out = rebuild(n, a, b);
        }
      }
    }
    memo[n.get()] = out;
    return out;
  };
  return go(e);
}

Ptr replace_first(const Ptr& e, const Ptr& pat, const Ptr& rep, bool* done) {
  bool local = false;
  bool* flag = done ? done : &local;
  if (*flag) return e;
  if (alpha_equal(e, pat)) {
    *flag = true;
    return rep;
  }
  switch (e->kind) {
    case Kind::Var:
    case Kind::Const:
    case Kind::Top:
    case Kind::Bot:
      return e;
    default: {
      Ptr a = e->a ? replace_first(e->a, pat, rep, flag) : e->a;
      Ptr b = (e->b && !*flag) ? replace_first(e->b, pat, rep, flag) : e->b;
      return rebuild(e, a, b);
    }
  }
}

bool contains_kind(const Ptr& e, Kind k) {
  if (e->kind == k) return true;
  if (e->a && contains_kind(e->a, k)) return true;
  if (e->b && contains_kind(e->b, k)) return true;
  return false;
}

bool contains_choice(const Ptr& e) {
  return contains_kind(e, Kind::Eps) || contains_kind(e, Kind::Iota);
}

static Ptr beta_rec(const Ptr& e, int& budget) {
  if (--budget < 0) throw EpskitError("beta normalization exceeded step budget");
  switch (e->kind) {
    case Kind::Var:
    case Kind::Const:
    case Kind::Top:
    case Kind::Bot:
      return e;
    case Kind::App: {
      Ptr f = beta_rec(e->a, budget);
      Ptr x = beta_rec(e->b, budget);
      if (f->kind == Kind::Lam) {
        return beta_rec(subst_var(f->a, f->var, x), budget);
      }
      return rebuild(e, f, x);
    }
    default: {
      Ptr a = e->a ? beta_rec(e->a, budget) : e->a;
      Ptr b = e->b ? beta_rec(e->b, budget) : e->b;
      return rebuild(e, a, b);
    }
  }
}

Ptr beta_normalize(const Ptr& e) {
  int budget = 1000000;
  return beta_rec(e, budget);
}

Ptr apply_substitution(const Ptr& e, const SubstitutionMap& s) {
  for (const auto& [v, t] : s.entries) {
    if (!free_bound_vars(t).empty())
      throw EpskitError("substitution range for " + v.str() +
                        " contains unbound bound-kind variables");
    if (!(type_of(t) == v.type))
      throw EpskitError("substitution range for " + v.str() + " has type " +
                        type_of(t).str() + ", expected " + v.type.str());
  }
  std::unordered_map<const Expr*, Ptr> memo;
  std::function<Ptr(const Ptr&)> go = [&](const Ptr& n) -> Ptr {
    auto mit = memo.find(n.get());
    if (mit != memo.end()) return mit->second;
    Ptr out;
    switch (n->kind) {
      case Kind::Var: {
        auto it = s.entries.find(n->var);
        out = (it == s.entries.end()) ? n : it->second;
        break;
      }
      case Kind::Const:
      case Kind::Top:
      case Kind::Bot:
        out = n;
        break;
      default: {
        Ptr a = n->a ? go(n->a) : n->a;
        Ptr b = n->b ? go(n->b) : n->b;
        out = rebuild(n, a, b);
      }
    }
    memo[n.get()] = out;
    return out;
  };
  return beta_normalize(go(e));
}

Ptr expand_unique_existence(const Ptr& exu) {
  if (exu->kind != Kind::ExUnique) throw EpskitError("expand_unique_existence: not an ex!");
  VariableId x = exu->var;
  VariableId y{x.name + "0", VarKind::Bound, x.type, fresh_uid()};
  Ptr body = mk_iff(mk_eq(mk_var(x), mk_var(y)), exu->a);
  return mk_exists(y, mk_forall(x, body));
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

// Precedence levels: 1 iff, 2 imp, 3 or, 4 and, 5 unary/binder/cmp, 6 atom.
struct Printer {
  std::ostringstream out;
  // uid -> display name for bound variables in scope
  std::map<std::uint64_t, std::string> display;
  std::set<std::string> in_scope;

  std::string fresh_display(const std::string& want) {
    if (!in_scope.count(want)) return want;
    for (int i = 2;; ++i) {
      std::string cand = want + "_" + std::to_string(i);
      if (!in_scope.count(cand)) return cand;
    }
  }

  void print(const Ptr& e, int level) {
    switch (e->kind) {
      case Kind::Top: out << "true"; return;
      case Kind::Bot: out << "false"; return;
      case Kind::Var: {
        if (e->var.kind == VarKind::Bound) {
          auto it = display.find(e->var.uid);
          out << (it != display.end() ? it->second : e->var.name);
        } else {
          out << e->var.str();
        }
        return;
      }
      case Kind::Const: out << e->cname; return;
      case Kind::App: {
        std::vector<Ptr> args;
        Ptr head = e;
        while (head->kind == Kind::App) {
          args.push_back(head->b);
          head = head->a;
        }
        std::reverse(args.begin(), args.end());
        if (head->kind == Kind::Var || head->kind == Kind::Const) {
          print(head, 6);
        } else {
          out << "(";
          print(head, 1);
          out << ")";
        }
        out << "(";
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (i) out << ", ";
          print(args[i], 1);
        }
        out << ")";
        return;
      }
      case Kind::Not: {
        if (e->a->kind == Kind::Eq) {  // print ~(a = b) as a != b
          maybe_paren(level > 5, [&] {
            print_atom_operand(e->a->a);
            out << " != ";
            print_atom_operand(e->a->b);
          });
          return;
        }
        maybe_paren(level > 5, [&] {
          out << "~";
          print(e->a, 5);
        });
        return;
      }
      case Kind::Eq: {
        maybe_paren(level > 5, [&] {
          print_atom_operand(e->a);
          out << " = ";
          print_atom_operand(e->b);
        });
        return;
      }
      case Kind::And: print_bin(e, " /\\ ", 4, level); return;
      case Kind::Or: print_bin(e, " \\/ ", 3, level); return;
      case Kind::Imp: {
        maybe_paren(level > 2, [&] {
          print(e->a, 3);
          out << " -> ";
          print(e->b, 2);
        });
        return;
      }
      case Kind::Iff: {
        maybe_paren(level > 1, [&] {
          print(e->a, 2);
          out << " <-> ";
          print(e->b, 2);
        });
        return;
      }
      case Kind::Lam: print_binder(e, "lambda", level); return;
      case Kind::Eps: print_binder(e, "eps", level); return;
      case Kind::Iota: print_binder(e, "iota", level); return;
      case Kind::Forall: print_binder(e, "all", level); return;
      case Kind::Exists: print_binder(e, "ex", level); return;
      case Kind::ExUnique: print_binder(e, "ex!", level); return;
    }
  }

  template <class F>
  void maybe_paren(bool paren, F f) {
    if (paren) out << "(";
    f();
    if (paren) out << ")";
  }

  void print_atom_operand(const Ptr& e) {
    bool atomic = e->kind == Kind::Var || e->kind == Kind::Const || e->kind == Kind::App ||
                  e->kind == Kind::Top || e->kind == Kind::Bot;
    maybe_paren(!atomic, [&] { print(e, 1); });
  }

  void print_bin(const Ptr& e, const char* op, int prec, int level) {
    maybe_paren(level > prec, [&] {
      print(e->a, prec);
      out << op;
      print(e->b, prec + 1);
    });
  }

  void print_binder(const Ptr& e, const char* kw, int level) {
    maybe_paren(level > 5, [&] {
      std::string name = fresh_display(e->var.name);
      out << kw << " " << name << ":" << e->var.type.str() << ". ";
      bool had = display.count(e->var.uid) > 0;
      std::string old = had ? display[e->var.uid] : "";
      display[e->var.uid] = name;
      in_scope.insert(name);
      print(e->a, 5);  // binders take the shortest body; connectives get parens
      in_scope.erase(name);
      if (had) display[e->var.uid] = old; else display.erase(e->var.uid);
    });
  }
};

}  // namespace

std::string to_string(const Ptr& e) {
  Printer p;
  p.print(e, 1);
  return p.out.str();
}

std::string to_string(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " | ";
    out += to_string(s[i]);
  }
  return out;
}

std::uint64_t tree_size(const Ptr& e) {
  std::unordered_map<const Expr*, std::uint64_t> memo;
  std::function<std::uint64_t(const Ptr&)> go = [&](const Ptr& n) -> std::uint64_t {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    std::uint64_t c = 1;
    if (n->a) c += go(n->a);
    if (n->b) c += go(n->b);
    memo[n.get()] = c;
    return c;
  };
  return go(e);
}

std::size_t dag_size(const Ptr& e) {
  std::set<const Expr*> seen;
  std::function<void(const Ptr&)> go = [&](const Ptr& n) {
    if (!seen.insert(n.get()).second) return;
    if (n->a) go(n->a);
    if (n->b) go(n->b);
  };
  go(e);
  return seen.size();
}

}  // namespace epskit
