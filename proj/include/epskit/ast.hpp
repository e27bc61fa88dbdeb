#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace epskit {

struct EpskitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Types: curried simple types over named base sorts.  "o" is the sort of
// truth values and is always available.
// ---------------------------------------------------------------------------

struct Type {
  std::vector<Type> args;
  std::string base;

  bool is_base() const { return args.empty(); }
  std::string str() const;
};

bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }
bool operator<(const Type& a, const Type& b);

inline const std::string kBoolSort = "o";
inline Type bool_type() { return Type{{}, kBoolSort}; }
inline Type base_type(std::string s) { return Type{{}, std::move(s)}; }

// ---------------------------------------------------------------------------
// Variables.  Free variables come in three classes: gamma (free existential),
// delta-minus (weak universal) and delta-plus (strong universal).  Bound
// variables carry a machine-unique uid so distinct binders never collide.
// ---------------------------------------------------------------------------

enum class VarKind { Bound, Gamma, DeltaMinus, DeltaPlus };

std::string kind_suffix(VarKind k);  // "", "^g", "^d-", "^d+"

inline bool is_rigid(VarKind k) {
  return k == VarKind::Gamma || k == VarKind::DeltaPlus;
}
inline bool is_free_kind(VarKind k) { return k != VarKind::Bound; }

struct VariableId {
  std::string name;
  VarKind kind = VarKind::Bound;
  Type type;
  std::uint64_t uid = 0;  // nonzero for bound variables only

  std::string str() const { return name + kind_suffix(kind); }
};

bool operator==(const VariableId& a, const VariableId& b);
inline bool operator!=(const VariableId& a, const VariableId& b) { return !(a == b); }
bool operator<(const VariableId& a, const VariableId& b);

std::uint64_t fresh_uid();

// ---------------------------------------------------------------------------
// Expressions.  One immutable node type covers terms and formulas; the
// distinction is recovered from types ("o"-typed expressions are formulas).
// ---------------------------------------------------------------------------

enum class Kind {
  Var,
  Const,
  App,   // a applied to b (curried)
  Lam,   // lambda var. a
  Eps,   // eps var. a   (indefinite choice)
  Iota,  // iota var. a  (definite description)
  Top,
  Bot,
  Not,   // ~a
  And,   // a /\ b
  Or,    // a \/ b
  Imp,   // a -> b
  Iff,   // a <-> b
  Eq,    // a = b
  Forall,
  Exists,
  ExUnique,
};

struct Expr;
using Ptr = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind;
  VariableId var;     // Var, or the binder variable for Lam/Eps/Iota/quantifiers
  std::string cname;  // Const
  Type ctype;         // Const
  Ptr a, b;
};

using Sequent = std::vector<Ptr>;  // read disjunctively
using Goals = std::vector<Sequent>;

Ptr mk_var(VariableId v);
Ptr mk_const(std::string name, Type t);
Ptr mk_app(Ptr f, Ptr x);
Ptr mk_app(Ptr f, const std::vector<Ptr>& xs);
Ptr mk_binder(Kind k, VariableId v, Ptr body);
inline Ptr mk_lam(VariableId v, Ptr b) { return mk_binder(Kind::Lam, v, std::move(b)); }
inline Ptr mk_eps(VariableId v, Ptr b) { return mk_binder(Kind::Eps, v, std::move(b)); }
inline Ptr mk_iota(VariableId v, Ptr b) { return mk_binder(Kind::Iota, v, std::move(b)); }
inline Ptr mk_forall(VariableId v, Ptr b) { return mk_binder(Kind::Forall, v, std::move(b)); }
inline Ptr mk_exists(VariableId v, Ptr b) { return mk_binder(Kind::Exists, v, std::move(b)); }
inline Ptr mk_exunique(VariableId v, Ptr b) { return mk_binder(Kind::ExUnique, v, std::move(b)); }
Ptr mk_top();
Ptr mk_bot();
Ptr mk_not(Ptr a);
Ptr mk_bin(Kind k, Ptr a, Ptr b);
inline Ptr mk_and(Ptr a, Ptr b) { return mk_bin(Kind::And, std::move(a), std::move(b)); }
inline Ptr mk_or(Ptr a, Ptr b) { return mk_bin(Kind::Or, std::move(a), std::move(b)); }
inline Ptr mk_imp(Ptr a, Ptr b) { return mk_bin(Kind::Imp, std::move(a), std::move(b)); }
inline Ptr mk_iff(Ptr a, Ptr b) { return mk_bin(Kind::Iff, std::move(a), std::move(b)); }
inline Ptr mk_eq(Ptr a, Ptr b) { return mk_bin(Kind::Eq, std::move(a), std::move(b)); }
Ptr mk_and_all(const std::vector<Ptr>& fs);  // true for empty

// Negation that strips a leading ~ instead of stacking a second one.
Ptr conjugate(const Ptr& f);

// Type of an expression; throws EpskitError on ill-typed input.
Type type_of(const Ptr& e);
bool is_formula(const Ptr& e);

enum class VarSel { AllFree, Gamma, Delta, DeltaMinus, DeltaPlus, GammaDeltaPlus, Rigid };

// Free variables of the selected classes, sorted by name.
std::vector<VariableId> free_vars(const Ptr& e, VarSel sel = VarSel::AllFree);
void collect_free_vars(const Ptr& e, VarSel sel, std::set<VariableId>& out);

// Free occurrences of bound-kind variables (e.g. abstraction parameters).
std::set<VariableId> free_bound_vars(const Ptr& e);
// Same, but in order of first free occurrence.
std::vector<VariableId> free_bound_vars_ordered(const Ptr& e);

bool alpha_equal(const Ptr& a, const Ptr& b);
std::size_t alpha_hash(const Ptr& e);

// Replaces free occurrences of v by t.  Binder uids are globally unique, so
// no capture is possible.
Ptr subst_var(const Ptr& e, const VariableId& v, const Ptr& t);

// Replaces every occurrence alpha-equal to pat by rep; returns the count.
Ptr replace_all(const Ptr& e, const Ptr& pat, const Ptr& rep, int* count = nullptr);
// Replaces only the first occurrence in leftmost-outermost order.
Ptr replace_first(const Ptr& e, const Ptr& pat, const Ptr& rep, bool* done = nullptr);

bool contains_kind(const Ptr& e, Kind k);
bool contains_choice(const Ptr& e);  // any eps or iota node

Ptr beta_normalize(const Ptr& e);

struct SubstitutionMap {
  std::map<VariableId, Ptr> entries;
  bool empty() const { return entries.empty(); }
};

// Simultaneous substitution of free variables, followed by beta
// normalization.  Range terms must not contain unbound bound-kind variables.
Ptr apply_substitution(const Ptr& e, const SubstitutionMap& s);

// ex! x. A  ~~>  ex y. all x. (x = y <-> A) with fresh y.
Ptr expand_unique_existence(const Ptr& exu);

// Printing.  Output parses back to an alpha-equal expression; nested binders
// with clashing surface names are disambiguated on the fly.
std::string to_string(const Ptr& e);
std::string to_string(const Sequent& s);

// Node counts: tree size counts shared subterms once per occurrence,
// dag size counts distinct nodes.
std::uint64_t tree_size(const Ptr& e);
std::size_t dag_size(const Ptr& e);

}  // namespace epskit
