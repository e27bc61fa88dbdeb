#pragma once

#include <iosfwd>
#include <string>

#include "epskit/problem.hpp"

namespace epskit {

struct CorpusResult {
  int passed = 0;
  int failed = 0;
};

// Checks every condition entry of the problem: Q_C(y) must hold under every
// compatible committed choice, on every structure with universes up to
// max_size.  Returns the number of (structure, entry) checks done; throws
// with the offending entry and structure on failure.
int qc_sweep(const Problem& prob, int max_size);

// Runs the built-in expectation table over the corpus directory, printing one
// PASS/FAIL line per item.  `only` filters items by substring (empty = all).
CorpusResult run_corpus(const std::string& dir, const std::string& only, std::ostream& out);

}  // namespace epskit
