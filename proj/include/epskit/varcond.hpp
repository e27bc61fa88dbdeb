#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "epskit/ast.hpp"

namespace epskit {

// Variable conditions: a binary relation on free variables, read as
// "left must be chosen before right".  Admissibility = acyclicity.
struct VarCond {
  std::set<std::pair<VariableId, VariableId>> edges;

  void add(const VariableId& from, const VariableId& to) { edges.emplace(from, to); }
  bool empty() const { return edges.empty(); }
};

VarCond merge(const VarCond& a, const VarCond& b);

bool is_acyclic(const VarCond& r);

// Returns some cycle as v0 -> v1 -> ... -> v0, rotated to start at the
// smallest variable so diagnostics are deterministic.
std::optional<std::vector<VariableId>> find_cycle(const VarCond& r);
std::string cycle_string(const std::vector<VariableId>& cycle);

// All u with u R* t for some t in targets (reflexive: includes targets).
std::set<VariableId> reachable_into(const VarCond& r, const std::set<VariableId>& targets);

// R extended by (z, x) for every x in dom(s) and z free in s(x).
VarCond sigma_update(const VarCond& r, const SubstitutionMap& s);

// A substitution is admissible iff its domain is rigid (gamma or delta-plus),
// range terms are closed under bound-kind variables, and the sigma-update
// stays acyclic.  On failure *diag carries a printable reason.
bool is_r_substitution(const VarCond& r, const SubstitutionMap& s, std::string* diag = nullptr);

}  // namespace epskit
