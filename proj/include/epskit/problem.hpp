#pragma once

#include <map>
#include <string>
#include <vector>

#include "epskit/choicecond.hpp"
#include "epskit/parse.hpp"

namespace epskit {

struct Lemma {
  std::string name;
  Ptr formula;
};

// Named optional variable-condition edge, switchable from the CLI.
struct Toggle {
  std::string name;
  VariableId from, to;
};

struct Problem {
  std::string path;
  Signature sig;
  FreeVarTable frees;
  Goals goals;
  CcPair pair;
  std::vector<Lemma> lemmas;
  std::vector<Toggle> toggles;

  const Lemma* find_lemma(const std::string& name) const;
  void apply_toggle(const std::string& name);  // throws on unknown / inadmissible
};

// Loads a problem file with directives (order: sorts/consts/frees first):
//   sort i
//   const P : i > i > o
//   free x0^d- : i
//   vc x0^d- -> y0^d+
//   cc y0^d+ := lambda x:i. <formula>      (nullary: cc y0^d+ := <formula>)
//   goal <formula> | <formula> | ...
//   lemma name : <formula>
//   toggle name : vc a^d- -> b^d+
// The initial pair must be admissible; violations (including cycles) are
// reported with the file position.
Problem load_problem(const std::string& path);

// Proof scripts are parsed lazily, one command per line, because gamma terms
// and substitutions may mention variables created by earlier steps.
struct Script {
  std::string path;
  std::vector<std::pair<int, std::string>> lines;  // (line number, text)
};

Script load_script(const std::string& path);

}  // namespace epskit
