#pragma once

#include <map>
#include <set>
#include <string>

#include "epskit/ast.hpp"

namespace epskit {

struct Signature {
  std::set<std::string> sorts;                 // "o" is implicit
  std::map<std::string, Type> consts;

  bool has_sort(const std::string& s) const { return s == kBoolSort || sorts.count(s) > 0; }
  void declare_sort(const std::string& s);
  void declare_const(const std::string& name, const Type& t);
  void validate_type(const Type& t) const;     // all sorts declared
};

// Declared free variables, looked up by (surface name, kind).
struct FreeVarTable {
  std::map<std::pair<std::string, VarKind>, VariableId> vars;

  void declare(const VariableId& v);
  const VariableId* find(const std::string& name, VarKind k) const;
  std::vector<VariableId> all() const;
};

struct ParseError : EpskitError {
  using EpskitError::EpskitError;
};

// Parses a formula (type o).  Free-kind variables must be declared in
// `frees` and referenced with their class suffix (x^g, x^d-, x^d+);
// plain identifiers resolve to bound variables in scope, then constants.
Ptr parse_formula(const std::string& text, const Signature& sig, const FreeVarTable& frees);

// Parses an expression of arbitrary type (terms, lambda abstractions).
Ptr parse_expr(const std::string& text, const Signature& sig, const FreeVarTable& frees);

// Parses a type such as "i > i > o".
Type parse_type(const std::string& text, const Signature& sig);

// Parses a suffixed reference like "x0^d+" to a declared free variable.
VariableId parse_free_ref(const std::string& text, const FreeVarTable& frees);

// Splits a goal line on top-level '|' into sequent members and parses each.
Sequent parse_sequent(const std::string& text, const Signature& sig, const FreeVarTable& frees);

}  // namespace epskit
