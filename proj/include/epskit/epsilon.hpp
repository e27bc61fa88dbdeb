#pragma once

#include <utility>
#include <vector>

#include "epskit/ast.hpp"
#include "epskit/choicecond.hpp"

namespace epskit {

// ---------------------------------------------------------------------------
// Choice-term elimination: replaces every eps/iota term by a fresh
// delta-plus variable carrying the matching condition entry, innermost
// terms first.  With sharing on, occurrences that are alpha-equal map to
// one variable; with sharing off every occurrence gets its own.
// ---------------------------------------------------------------------------

struct ElimResult {
  Goals goals;
  CcPair pair;
  std::vector<VariableId> introduced;  // in introduction order
};

ElimResult eliminate_choice_terms(const Goals& goals, const CcPair& start, bool share,
                                  const std::set<VariableId>& reserved = {});

// ---------------------------------------------------------------------------
// Classical quantifier elimination into choice terms:
//   ex x. A  ~~>  A{x := eps x. A}
//   all x. A ~~>  A{x := eps x. ~A}
// Both strategies produce the same normal form; order only changes the
// intermediate steps.
// ---------------------------------------------------------------------------

enum class QelimOrder { InsideOut, OutsideIn };

Ptr classical_qelim(const Ptr& f, QelimOrder order, int* steps = nullptr);

// Nesting depth of choice binders, reading the term as a tree.
int nesting_depth(const Ptr& f);

// Pairs (outer choice term, inner choice term occurrence) where the inner
// term occurs in the outer's scope and uses the outer's bound variable.
std::vector<std::pair<Ptr, Ptr>> subordinate_pairs(const Ptr& f);

// ---------------------------------------------------------------------------
// Quantifier removal by free variables and variable conditions instead of
// nested choice terms: prenex-accessible quantifiers become free gamma /
// delta-minus variables; each delta step records the rigid variables seen
// so far in the variable condition.  Nesting depth of the result does not
// grow with the quantifier prefix.
// ---------------------------------------------------------------------------

struct VcReduceResult {
  Ptr formula;
  CcPair pair;
  std::vector<VariableId> introduced;
};

VcReduceResult vc_reduction(const Ptr& f, const CcPair& start,
                            const std::set<VariableId>& reserved = {});

}  // namespace epskit
