#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "epskit/choicecond.hpp"
#include "epskit/structure.hpp"

namespace epskit {

// ---------------------------------------------------------------------------
// Values over a finite structure: a base element (index into its sort's
// universe) or a total finite function from base tuples to a base element.
// ---------------------------------------------------------------------------

using Tuple = std::vector<int>;

struct FuncVal {
  std::map<Tuple, int> table;
};

struct Value {
  int elem = -1;
  std::shared_ptr<const FuncVal> fn;

  bool is_fn() const { return fn != nullptr; }
};

bool operator==(const Value& a, const Value& b);
bool operator<(const Value& a, const Value& b);

struct Valuation {
  std::map<VariableId, Value> m;
};

// Evaluates a choice-free expression.  Formulas yield 0/1 in elem.
Value eval(const FiniteStructure& st, Valuation& val, const Ptr& e);
bool eval_formula(const FiniteStructure& st, Valuation& val, const Ptr& f);
bool sequent_true(const FiniteStructure& st, Valuation& val, const Sequent& s);

// All values of a type over the structure (function types enumerate every
// total table).  Throws past the documented caps.
std::vector<Value> value_space(const FiniteStructure& st, const Type& t);

// ---------------------------------------------------------------------------
// Raising tables: one entry per target variable, reading a declared set of
// source variables.  This realizes the semantical functions for both the
// gamma layer (e) and the delta-plus layer (pi).
// ---------------------------------------------------------------------------

struct RaisingEntry {
  std::vector<VariableId> sources;  // base-typed variables, sorted
  std::map<Tuple, Value> table;     // total over the sources' universes
};

struct RaisingTable {
  std::map<VariableId, RaisingEntry> entries;
};

// The semantical relation: (source, target) for every declared source.
VarCond s_relation(const RaisingTable& t);

// Applies one entry to a valuation of its sources.
Value raising_value(const FiniteStructure& st, const RaisingEntry& entry,
                    const Valuation& base);

// Extends base with the pi layer (sources restricted to base) and then the
// e layer (sources may read pi results).
Valuation assemble(const FiniteStructure& st, const Valuation& base,
                   const RaisingTable& pi, const RaisingTable& e);

struct OracleLimits {
  int max_universe = 3;
  int max_class_vars = 3;
  std::uint64_t max_combinations = 60000000ULL;
};

// Enumerates every raising table for the targets: all source subsets from
// the pool keeping base_rel plus the table's own relation acyclic, times all
// total tables.  Deterministic order.  fn returning false stops early.
void for_each_raising(const FiniteStructure& st, const std::vector<VariableId>& targets,
                      const std::vector<VariableId>& pool, const VarCond& base_rel,
                      const OracleLimits& lim,
                      const std::function<bool(const RaisingTable&)>& fn);

std::uint64_t count_raisings(const FiniteStructure& st,
                             const std::vector<VariableId>& targets,
                             const std::vector<VariableId>& pool, const VarCond& base_rel,
                             const OracleLimits& lim);

// ---------------------------------------------------------------------------
// Validity
// ---------------------------------------------------------------------------

struct OracleVerdict {
  bool valid = false;
  std::string detail;
};

enum class PiVariant { Some, Any };

// Compatibility of a delta-plus layer with the pair, given the gamma layer:
// acyclicity of R with both semantical relations, and for every entry the
// body may only become true under the committed choice whenever any choice
// could make it true.
bool is_compatible(const FiniteStructure& st, const CcPair& pair, const RaisingTable& e,
                   const RaisingTable& pi, const std::vector<VariableId>& delta_minus,
                   std::string* why = nullptr);

// Validity with no delta-plus variables: some gamma layer works for every
// assignment of the universal variables.
OracleVerdict is_r_valid(const Goals& goals, const VarCond& r, const FiniteStructure& st,
                         const OracleLimits& lim = {});

// Validity with committed choices: some gamma layer such that the goals hold
// for some compatible pi (Some) or for every compatible pi (Any), under all
// assignments of the weak universal variables.
OracleVerdict is_cr_valid(const Goals& goals, const CcPair& pair, const FiniteStructure& st,
                          PiVariant variant, const OracleLimits& lim = {});

// Reduction soundness: whenever g1 holds under a gamma layer and compatible
// pi, g0 holds as well.
OracleVerdict reduces_check(const Goals& g0, const Goals& g1, const CcPair& pair,
                            const FiniteStructure& st, const OracleLimits& lim = {});

// Named axiom instances over a structure providing P : i > o (plus Q for the
// two-variable axioms and le for the minimum operator).
OracleVerdict check_axiom(const std::string& axiom, const FiniteStructure& st,
                          PiVariant variant, const OracleLimits& lim = {});

// The instantiated axiom problem, for reuse in tests and the CLI.
struct AxiomInstance {
  Goals goals;
  CcPair pair;
};
AxiomInstance axiom_instance(const std::string& axiom, const Signature& sig);

}  // namespace epskit
