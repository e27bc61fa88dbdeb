#pragma once

// Backwards sequent calculus for free variables with committed choice.
//
// A proof state is a set of open goals (disjunctively read sequents), a
// variable/condition pair, and a registry of the free variables created so
// far.  Rules transform one open goal; instantiation transforms all of them
// at once and may append follow-up goals for the committed choices it
// discharges.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "epskit/ast.hpp"
#include "epskit/choicecond.hpp"
#include "epskit/parse.hpp"
#include "epskit/problem.hpp"

namespace epskit {

struct StepRecord {
  std::string tag;       // alpha, beta, gamma, delta-, delta+, inst, close, add_lemma
  int goal = -1;         // goal index the step consumed (-1 for inst)
  int pos = -1;          // formula position within the goal, where applicable
  std::string payload;   // term / substitution / lemma text, for the trace
  std::vector<int> created;  // goal indices the step created
  std::string note;
};

class ProofState {
 public:
  explicit ProofState(Problem prob);

  const Problem& problem() const { return prob_; }
  const CcPair& pair() const { return pair_; }
  const std::map<int, Sequent>& goals() const { return goals_; }
  const std::vector<StepRecord>& trace() const { return trace_; }

  bool closed() const { return goals_.empty(); }
  int lowest_open() const;  // -1 when closed

  // Fails loudly on bad indices so scripts can't silently drift.
  const Sequent& goal(int index) const;

  // splitting rules; pos selects the principal formula
  void apply_alpha(int goal, int pos);
  void apply_beta(int goal, int pos);

  // quantifier rules
  void apply_gamma(int goal, int pos, Ptr term);
  VariableId apply_delta_minus(int goal, int pos);
  VariableId apply_delta_plus(int goal, int pos);

  // global rules
  void apply_instantiate(const SubstitutionMap& sigma);
  void apply_close(int goal);
  void apply_lemma(const std::string& name, int goal);

  // Parses one script command against the current registry and runs it.
  void run_command(const std::string& line);

  std::string render() const;  // open goals, for --dump and errors

  FreeVarTable& frees() { return frees_; }
  const FreeVarTable& frees() const { return frees_; }

 private:
  int push_goal(Sequent s);
  void record(StepRecord r) { trace_.push_back(std::move(r)); }
  VariableId make_fresh(const std::string& hint, VarKind kind, const Type& ty);

  Problem prob_;
  CcPair pair_;
  FreeVarTable frees_;
  std::map<int, Sequent> goals_;
  std::vector<StepRecord> trace_;
  int next_goal_ = 0;
};

struct ReplayReport {
  bool closed = false;
  int steps = 0;
  std::vector<int> open_goals;
  std::string log;
};

// Runs a script to the end; stops with an exception on the first bad command.
ReplayReport replay_script(ProofState& st, const Script& sc, bool verbose = false);

// Replaces choice terms in the problem's goals by committed variables (shared
// across alpha-equal occurrences) and registers the introduced variables, so
// scripts and the oracle can refer to them.  No-op without choice terms.
void eliminate_goal_choices(Problem& prob);

}  // namespace epskit
