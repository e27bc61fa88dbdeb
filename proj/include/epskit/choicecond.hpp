#pragma once

#include <map>
#include <string>
#include <vector>

#include "epskit/ast.hpp"
#include "epskit/varcond.hpp"

namespace epskit {

// A choice-condition entry: lambda v0 ... v_{l-1}. body, attached to a
// delta-plus variable of type a0 > ... > a_{l-1} > a_l.  Nullary entries
// have an empty parameter list.
struct Abstraction {
  std::vector<VariableId> params;  // bound-kind variables
  Ptr body;                        // a formula

  Ptr as_lambda() const;           // body wrapped in lambdas (the entry as a term)
};

struct CcPair {
  std::map<VariableId, Abstraction> cc;
  VarCond vc;
};

struct CcViolation {
  std::string code;     // stable identifier, e.g. "vc-cycle", "cc-unordered"
  std::string message;  // printable detail
};

// Checks every requirement and reports all violations:
//   - vc-cycle:     the variable condition has a cycle
//   - cc-domain:    an entry is attached to a non-delta-plus variable
//   - cc-unordered: a free variable of a body does not precede its variable
//   - cc-params:    body has free bound-kind variables outside the parameters
//   - cc-type:      parameter types do not match the variable's type
//   - cc-occurrence: the variable occurs other than fully applied to exactly
//                    its parameters, in order
//   - cc-body:      body is not a formula / contains choice binders
std::vector<CcViolation> validate_cc(const CcPair& pair);
std::string violations_string(const std::vector<CcViolation>& v);

// Q_C(y) = all v0 ... v_{l-1}. ((ex y'. body{y(v...) := y'}) -> body).
Ptr build_QC(const CcPair& pair, const VariableId& y);

// Adds entries and edges, then revalidates; throws EpskitError listing the
// violations if the result is not admissible.
CcPair extend(const CcPair& pair, const std::map<VariableId, Abstraction>& entries,
              const VarCond& edges);

// The pair after applying a substitution: entries for substituted variables
// are dropped, remaining bodies are instantiated, the condition gets the
// sigma-update.
CcPair extended_sigma_update(const CcPair& pair, const SubstitutionMap& s);

// Instantiated proof obligations (Q_C(y))sigma for the variables that are
// substituted, have an entry, and can reach a delta-plus variable of the
// given goals.  Sorted by variable for determinism.
std::vector<Ptr> obligations_for(const CcPair& pair, const SubstitutionMap& s,
                                 const Goals& goals);

}  // namespace epskit
