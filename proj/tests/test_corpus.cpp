#include "doctest.h"

#include <sstream>

#include "epskit/corpus_runner.hpp"

TEST_CASE("every bundled corpus expectation holds") {
  std::ostringstream out;
  epskit::CorpusResult r = epskit::run_corpus("corpus", "", out);
  INFO(out.str());
  CHECK(r.failed == 0);
  CHECK(r.passed >= 30);
}

TEST_CASE("the item filter narrows the run") {
  std::ostringstream out;
  epskit::CorpusResult r = epskit::run_corpus("corpus", "prenex", out);
  CHECK(r.passed + r.failed == 4);
}

TEST_CASE("a missing corpus directory fails with the file in the message") {
  std::ostringstream out;
  epskit::CorpusResult r = epskit::run_corpus("no_such_dir", "elim-empty", out);
  CHECK(r.failed == 1);
  CHECK(out.str().find("no_such_dir/empty.p") != std::string::npos);
}
