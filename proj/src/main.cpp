#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "epskit/calculus.hpp"
#include "epskit/corpus_runner.hpp"
#include "epskit/epsilon.hpp"
#include "epskit/oracle.hpp"
#include "epskit/structure.hpp"

namespace {

using epskit::EpskitError;
using epskit::FiniteStructure;
using epskit::Goals;
using epskit::PiVariant;
using epskit::Problem;
using epskit::Ptr;
using json = nlohmann::json;

// Shared flags; output must stay deterministic, so no wall-clock anywhere.
struct Options {
  std::string dump;
  std::string variant = "some";
  int max_size = 2;
};

PiVariant parse_variant(const std::string& v) {
  if (v == "some") return PiVariant::Some;
  if (v == "any") return PiVariant::Any;
  throw EpskitError("unknown variant: " + v + " (use some|any)");
}

void write_dump(const Options& opt, const json& j) {
  if (opt.dump.empty()) return;
  std::ofstream out(opt.dump);
  if (!out) throw EpskitError("cannot write dump file: " + opt.dump);
  out << j.dump(2) << "\n";
}

std::string sequent_string(const epskit::Sequent& s) {
  std::string line;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) line += " | ";
    line += to_string(s[i]);
  }
  return line;
}

json pair_json(const epskit::CcPair& pair) {
  json j;
  j["cc"] = json::object();
  for (const auto& [y, abs] : pair.cc) j["cc"][y.str()] = to_string(abs.as_lambda());
  j["vc"] = json::array();
  for (const auto& [a, b] : pair.vc.edges) j["vc"].push_back(a.str() + " -> " + b.str());
  return j;
}

void print_pair(const epskit::CcPair& pair) {
  for (const auto& [y, abs] : pair.cc)
    std::cout << "cc: " << y.str() << " := " << to_string(abs.as_lambda()) << "\n";
  for (const auto& [a, b] : pair.vc.edges)
    std::cout << "vc: " << a.str() << " -> " << b.str() << "\n";
}

int cmd_elim(const std::string& file, const std::string& mode, const std::string& order,
             bool share, bool metrics, const Options& opt) {
  Problem p = epskit::load_problem(file);
  json dump{{"command", "elim"}, {"file", file}, {"mode", mode}, {"goals", json::array()}};

  if (mode == "qelim") {
    epskit::QelimOrder ord;
    if (order == "in")
      ord = epskit::QelimOrder::InsideOut;
    else if (order == "out")
      ord = epskit::QelimOrder::OutsideIn;
    else
      throw EpskitError("unknown order: " + order + " (use in|out)");
    for (std::size_t g = 0; g < p.goals.size(); ++g) {
      epskit::Sequent out;
      int steps = 0, depth = 0;
      for (const Ptr& m : p.goals[g]) {
        int s = 0;
        Ptr r = epskit::classical_qelim(m, ord, &s);
        steps += s;
        depth = std::max(depth, epskit::nesting_depth(r));
        out.push_back(r);
      }
      std::cout << "goal " << g << ": " << sequent_string(out) << "\n";
      if (metrics) std::cout << "metrics " << g << ": steps " << steps << " depth " << depth << "\n";
      dump["goals"].push_back(sequent_string(out));
      if (metrics) dump["metrics"].push_back(json{{"steps", steps}, {"depth", depth}});
    }
    write_dump(opt, dump);
    return 0;
  }

  if (mode == "choice") {
    epskit::ElimResult r = epskit::eliminate_choice_terms(p.goals, p.pair, share);
    for (std::size_t g = 0; g < r.goals.size(); ++g) {
      std::cout << "goal " << g << ": " << sequent_string(r.goals[g]) << "\n";
      dump["goals"].push_back(sequent_string(r.goals[g]));
    }
    print_pair(r.pair);
    dump["pair"] = pair_json(r.pair);
    if (metrics)
      std::cout << "metrics: introduced " << r.introduced.size() << "\n";
    write_dump(opt, dump);
    return 0;
  }

  if (mode == "vc") {
    epskit::CcPair pair = p.pair;
    int introduced = 0;
    for (std::size_t g = 0; g < p.goals.size(); ++g) {
      epskit::Sequent out;
      int depth = 0;
      for (const Ptr& m : p.goals[g]) {
        epskit::VcReduceResult r = epskit::vc_reduction(m, pair);
        pair = r.pair;
        introduced += static_cast<int>(r.introduced.size());
        depth = std::max(depth, epskit::nesting_depth(r.formula));
        out.push_back(r.formula);
      }
      std::cout << "goal " << g << ": " << sequent_string(out) << "\n";
      if (metrics) std::cout << "metrics " << g << ": depth " << depth << "\n";
      dump["goals"].push_back(sequent_string(out));
    }
    print_pair(pair);
    dump["pair"] = pair_json(pair);
    if (metrics) std::cout << "metrics: introduced " << introduced << "\n";
    write_dump(opt, dump);
    return 0;
  }

  throw EpskitError("unknown mode: " + mode + " (use qelim|choice|vc)");
}

int cmd_prove(const std::string& file, const std::string& script, bool verbose,
              const Options& opt) {
  Problem p = epskit::load_problem(file);
  epskit::eliminate_goal_choices(p);
  epskit::ProofState st(p);
  epskit::Script sc = epskit::load_script(script);
  json dump{{"command", "prove"}, {"file", file}, {"script", script}};
  try {
    epskit::ReplayReport rep = epskit::replay_script(st, sc, verbose);
    if (verbose) std::cout << rep.log;
    std::cout << st.render();
    std::cout << (rep.closed ? "closed" : "open") << " after " << rep.steps << " steps\n";
    dump["closed"] = rep.closed;
    dump["steps"] = rep.steps;
    dump["open"] = json::array();
    for (int idx : rep.open_goals) dump["open"].push_back(sequent_string(st.goal(idx)));
    write_dump(opt, dump);
    return rep.closed ? 0 : 1;
  } catch (const EpskitError& err) {
    std::cout << "rejected: " << err.what() << "\n";
    dump["rejected"] = err.what();
    write_dump(opt, dump);
    return 1;
  }
}

int cmd_check_model(const std::string& file, const std::string& structure, bool all_structures,
                    bool qc, const std::vector<std::string>& toggles, const Options& opt) {
  Problem p = epskit::load_problem(file);
  epskit::eliminate_goal_choices(p);
  for (const std::string& t : toggles) p.apply_toggle(t);
  PiVariant variant = parse_variant(opt.variant);
  json dump{{"command", "check-model"}, {"file", file}, {"variant", opt.variant}};

  if (qc) {
    dump["qc"] = true;
    if (!all_structures) throw EpskitError("--qc needs --all-structures");
    try {
      int checks = epskit::qc_sweep(p, opt.max_size);
      std::cout << "Q_C valid: " << checks << " entry/structure checks up to size "
                << opt.max_size << "\n";
      dump["valid"] = true;
      dump["checks"] = checks;
      write_dump(opt, dump);
      return 0;
    } catch (const EpskitError& err) {
      std::cout << "Q_C invalid: " << err.what() << "\n";
      dump["valid"] = false;
      dump["detail"] = err.what();
      write_dump(opt, dump);
      return 1;
    }
  }

  if (all_structures) {
    int rows = 0;
    bool ok = true;
    std::string detail;
    epskit::for_each_structure(p.sig, opt.max_size, [&](const FiniteStructure& st) {
      epskit::OracleVerdict v = epskit::is_cr_valid(p.goals, p.pair, st, variant);
      ++rows;
      if (!v.valid) {
        ok = false;
        detail = "invalid on " + st.name + ": " + v.detail;
        return false;
      }
      return true;
    });
    if (ok)
      std::cout << "valid on all " << rows << " structures up to size " << opt.max_size << "\n";
    else
      std::cout << detail << "\n";
    dump["valid"] = ok;
    dump["structures"] = rows;
    if (!ok) dump["detail"] = detail;
    write_dump(opt, dump);
    return ok ? 0 : 1;
  }

  if (structure.empty()) throw EpskitError("check-model needs a structure file or --all-structures");
  FiniteStructure st = epskit::load_structure(structure, p.sig);
  dump["structure"] = structure;
  dump["goals"] = json::array();
  bool all_valid = true;
  for (std::size_t i = 0; i < p.goals.size(); ++i) {
    Problem single = p;
    single.goals = Goals{p.goals[i]};
    epskit::OracleVerdict v = epskit::is_cr_valid(single.goals, single.pair, st, variant);
    std::cout << "goal " << i << ": " << (v.valid ? "valid" : "invalid");
    if (!v.valid && !v.detail.empty()) std::cout << " (" << v.detail << ")";
    std::cout << "\n";
    dump["goals"].push_back(json{{"valid", v.valid}, {"detail", v.detail}});
  }
  epskit::OracleVerdict combined = epskit::is_cr_valid(p.goals, p.pair, st, variant);
  all_valid = combined.valid;
  std::cout << "combined: " << (combined.valid ? "valid" : "invalid");
  if (!combined.valid && !combined.detail.empty()) std::cout << " (" << combined.detail << ")";
  std::cout << "\n";
  dump["valid"] = combined.valid;
  dump["detail"] = combined.detail;
  write_dump(opt, dump);
  return all_valid ? 0 : 1;
}

int cmd_corpus(const std::string& dir, const std::string& only, const Options& opt) {
  epskit::CorpusResult r = epskit::run_corpus(dir, only, std::cout);
  std::cout << r.passed << " passed, " << r.failed << " failed\n";
  json dump{{"command", "corpus"}, {"dir", dir}, {"passed", r.passed}, {"failed", r.failed}};
  write_dump(opt, dump);
  return r.failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"choice-condition proof tool: elimination, replay, finite-model checking"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--dump", opt.dump, "write a structured run report to this file");
  app.add_option("--variant", opt.variant, "committed-choice quantification: some|any")
      ->default_val("some");
  app.add_option("--max-size", opt.max_size, "universe size bound for structure sweeps")
      ->default_val(2);

  std::string elim_file, elim_mode = "qelim", elim_order = "in";
  bool elim_share = false, elim_metrics = false;
  CLI::App* elim = app.add_subcommand("elim", "eliminate quantifiers or choice terms");
  elim->fallthrough();
  elim->add_option("file", elim_file, "problem file (.p)")->required();
  elim->add_option("--mode", elim_mode, "qelim|choice|vc")->default_val("qelim");
  elim->add_option("--order", elim_order, "qelim direction: in|out")->default_val("in");
  elim->add_flag("--share", elim_share, "share equal choice terms (mode choice)");
  elim->add_flag("--metrics", elim_metrics, "print step and depth counts");

  std::string prove_file, prove_script;
  bool prove_verbose = false;
  CLI::App* prove = app.add_subcommand("prove", "replay a proof script");
  prove->fallthrough();
  prove->add_option("file", prove_file, "problem file (.p)")->required();
  prove->add_option("script", prove_script, "proof script (.ps)")->required();
  prove->add_flag("--verbose", prove_verbose, "print the state after every step");

  std::string check_file, check_structure;
  bool check_all = false, check_qc = false;
  std::vector<std::string> check_toggles;
  CLI::App* check = app.add_subcommand("check-model", "finite-model validity oracle");
  check->fallthrough();
  check->add_option("file", check_file, "problem file (.p)")->required();
  check->add_option("structure", check_structure, "structure file (.st)");
  check->add_flag("--all-structures", check_all, "sweep every structure up to --max-size");
  check->add_flag("--qc", check_qc, "check the condition obligations instead of the goals");
  check->add_option("--toggle", check_toggles, "enable a named optional condition edge");

  std::string corpus_dir = "corpus", corpus_only;
  CLI::App* corpus = app.add_subcommand("corpus", "run the bundled expectation table");
  corpus->fallthrough();
  corpus->add_option("--dir", corpus_dir, "corpus directory")->default_val("corpus");
  corpus->add_option("--only", corpus_only, "run items whose name contains this substring");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*elim) return cmd_elim(elim_file, elim_mode, elim_order, elim_share, elim_metrics, opt);
    if (*prove) return cmd_prove(prove_file, prove_script, prove_verbose, opt);
    if (*check)
      return cmd_check_model(check_file, check_structure, check_all, check_qc, check_toggles, opt);
    if (*corpus) return cmd_corpus(corpus_dir, corpus_only, opt);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 2;
}
