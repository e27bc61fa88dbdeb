#include "epskit/varcond.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace epskit {

VarCond merge(const VarCond& a, const VarCond& b) {
  VarCond out = a;
  out.edges.insert(b.edges.begin(), b.edges.end());
  return out;
}

namespace {

std::map<VariableId, std::vector<VariableId>> adjacency(const VarCond& r) {
  std::map<VariableId, std::vector<VariableId>> adj;
  for (const auto& [from, to] : r.edges) adj[from].push_back(to);
  return adj;
}

}  // namespace

std::optional<std::vector<VariableId>> find_cycle(const VarCond& r) {
  auto adj = adjacency(r);
  std::map<VariableId, int> state;  // 0 unvisited, 1 on stack, 2 done
  std::vector<VariableId> stack;
  std::optional<std::vector<VariableId>> found;

  std::function<bool(const VariableId&)> dfs = [&](const VariableId& v) -> bool {
    state[v] = 1;
    stack.push_back(v);
    auto it = adj.find(v);
    if (it != adj.end()) {
      for (const auto& w : it->second) {
        int s = state.count(w) ? state[w] : 0;
        if (s == 1) {
          auto pos = std::find(stack.begin(), stack.end(), w);
          std::vector<VariableId> cyc(pos, stack.end());
          // rotate to start at the smallest member, then close the loop
          auto mn = std::min_element(cyc.begin(), cyc.end());
          std::rotate(cyc.begin(), mn, cyc.end());
          cyc.push_back(cyc.front());
          found = cyc;
          return true;
        }
        if (s == 0 && dfs(w)) return true;
      }
    }
    stack.pop_back();
    state[v] = 2;
    return false;
  };

  for (const auto& [from, to] : r.edges) {
    (void)to;
    if ((state.count(from) ? state[from] : 0) == 0) {
      if (dfs(from)) return found;
    }
  }
  return std::nullopt;
}

bool is_acyclic(const VarCond& r) { return !find_cycle(r).has_value(); }

std::string cycle_string(const std::vector<VariableId>& cycle) {
  std::string out;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (i) out += " -> ";
    out += cycle[i].str();
  }
  return out;
}

std::set<VariableId> reachable_into(const VarCond& r, const std::set<VariableId>& targets) {
  // walk edges backwards from the targets
  std::map<VariableId, std::vector<VariableId>> radj;
  for (const auto& [from, to] : r.edges) radj[to].push_back(from);
  std::set<VariableId> seen = targets;
  std::vector<VariableId> work(targets.begin(), targets.end());
  while (!work.empty()) {
    VariableId v = work.back();
    work.pop_back();
    auto it = radj.find(v);
    if (it == radj.end()) continue;
    for (const auto& u : it->second) {
      if (seen.insert(u).second) work.push_back(u);
    }
  }
  return seen;
}

VarCond sigma_update(const VarCond& r, const SubstitutionMap& s) {
  VarCond out = r;
  for (const auto& [x, t] : s.entries) {
    for (const auto& z : free_vars(t, VarSel::AllFree)) out.add(z, x);
  }
  return out;
}

bool is_r_substitution(const VarCond& r, const SubstitutionMap& s, std::string* diag) {
  for (const auto& [x, t] : s.entries) {
    if (!is_rigid(x.kind)) {
      if (diag) *diag = "substitution domain contains non-rigid variable " + x.str();
      return false;
    }
    if (!free_bound_vars(t).empty()) {
      if (diag)
        *diag = "substitution range for " + x.str() + " has unbound bound-kind variables";
      return false;
    }
    if (!(type_of(t) == x.type)) {
      if (diag)
        *diag = "substitution range for " + x.str() + " has type " + type_of(t).str() +
                ", expected " + x.type.str();
      return false;
    }
  }
  VarCond updated = sigma_update(r, s);
  if (auto cyc = find_cycle(updated)) {
    if (diag) *diag = "variable-condition cycle: " + cycle_string(*cyc);
    return false;
  }
  return true;
}

}  // namespace epskit
