#include "epskit/calculus.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "epskit/epsilon.hpp"

namespace epskit {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

bool is_not_of(const Ptr& f, Kind k) { return f->kind == Kind::Not && f->a->kind == k; }

}  // namespace

ProofState::ProofState(Problem prob)
    : prob_(std::move(prob)), pair_(prob_.pair), frees_(prob_.frees) {
  for (const auto& g : prob_.goals) push_goal(g);
}

int ProofState::lowest_open() const {
  return goals_.empty() ? -1 : goals_.begin()->first;
}

const Sequent& ProofState::goal(int index) const {
  auto it = goals_.find(index);
  if (it == goals_.end())
    throw EpskitError("no open goal " + std::to_string(index) +
                      (goals_.empty() ? " (proof is closed)" : ""));
  return it->second;
}

int ProofState::push_goal(Sequent s) {
  int idx = next_goal_++;
  goals_.emplace(idx, std::move(s));
  return idx;
}

VariableId ProofState::make_fresh(const std::string& hint, VarKind kind, const Type& ty) {
  std::string base = hint;
  while (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) base.pop_back();
  if (base.empty()) base = "v";
  for (int n = 0;; ++n) {
    std::string name = base + std::to_string(n);
    bool taken = false;
    for (VarKind k : {VarKind::Gamma, VarKind::DeltaMinus, VarKind::DeltaPlus})
      if (frees_.find(name, k)) taken = true;
    if (taken) continue;
    VariableId v{name, kind, ty, 0};
    frees_.declare(v);
    return v;
  }
}

// ---------------------------------------------------------------------------
// Splitting rules.  New formulas are prepended; the principal formula is
// dropped (the gamma rule below is the one exception and keeps it).
// ---------------------------------------------------------------------------

void ProofState::apply_alpha(int goal_idx, int pos) {
  const Sequent& g = goal(goal_idx);
  if (pos < 0 || pos >= static_cast<int>(g.size()))
    throw EpskitError("goal " + std::to_string(goal_idx) + " has no formula " +
                      std::to_string(pos));
  Ptr f = g[pos];
  std::vector<Ptr> out;
  if (f->kind == Kind::Or) {
    out = {f->a, f->b};
  } else if (f->kind == Kind::Imp) {
    out = {conjugate(f->a), f->b};
  } else if (is_not_of(f, Kind::And)) {
    out = {conjugate(f->a->a), conjugate(f->a->b)};
  } else if (is_not_of(f, Kind::Not)) {
    out = {f->a->a};
  } else if (is_not_of(f, Kind::Top)) {
    out = {mk_bot()};
  } else if (is_not_of(f, Kind::Bot)) {
    out = {mk_top()};
  } else if (f->kind == Kind::ExUnique) {
    out = {expand_unique_existence(f)};
  } else if (is_not_of(f, Kind::ExUnique)) {
    out = {mk_not(expand_unique_existence(f->a))};
  } else {
    throw EpskitError("alpha does not apply to " + to_string(f));
  }
  Sequent next = out;
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    if (i != pos) next.push_back(g[i]);
  goals_[goal_idx] = std::move(next);
  record({"alpha", goal_idx, pos, to_string(f), {}, ""});
}

void ProofState::apply_beta(int goal_idx, int pos) {
  const Sequent& g = goal(goal_idx);
  if (pos < 0 || pos >= static_cast<int>(g.size()))
    throw EpskitError("goal " + std::to_string(goal_idx) + " has no formula " +
                      std::to_string(pos));
  Ptr f = g[pos];
  std::vector<Ptr> left, right;
  if (f->kind == Kind::And) {
    left = {f->a};
    right = {f->b};
  } else if (is_not_of(f, Kind::Or)) {
    left = {conjugate(f->a->a)};
    right = {conjugate(f->a->b)};
  } else if (is_not_of(f, Kind::Imp)) {
    left = {f->a->a};
    right = {conjugate(f->a->b)};
  } else if (f->kind == Kind::Iff) {
    left = {conjugate(f->a), f->b};
    right = {f->a, conjugate(f->b)};
  } else if (is_not_of(f, Kind::Iff)) {
    left = {f->a->a, f->a->b};
    right = {conjugate(f->a->a), conjugate(f->a->b)};
  } else {
    throw EpskitError("beta does not apply to " + to_string(f));
  }
  Sequent rest;
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    if (i != pos) rest.push_back(g[i]);
  Sequent lg = left, rg = right;
  lg.insert(lg.end(), rest.begin(), rest.end());
  rg.insert(rg.end(), rest.begin(), rest.end());
  goals_.erase(goal_idx);
  int li = push_goal(std::move(lg));
  int ri = push_goal(std::move(rg));
  record({"beta", goal_idx, pos, to_string(f), {li, ri}, ""});
}

// ---------------------------------------------------------------------------
// Quantifier rules
// ---------------------------------------------------------------------------

void ProofState::apply_gamma(int goal_idx, int pos, Ptr term) {
  const Sequent& g = goal(goal_idx);
  if (pos < 0 || pos >= static_cast<int>(g.size()))
    throw EpskitError("goal " + std::to_string(goal_idx) + " has no formula " +
                      std::to_string(pos));
  Ptr f = g[pos];
  bool plain = f->kind == Kind::Exists;
  bool negated = is_not_of(f, Kind::Forall);
  if (!plain && !negated)
    throw EpskitError("gamma needs an existential principal, got " + to_string(f));
  Ptr q = plain ? f : f->a;
  Type want = q->var.type;
  Type got = type_of(term);
  if (!(want == got))
    throw EpskitError("gamma term has type " + got.str() + ", the bound variable needs " +
                      want.str());
  if (!free_bound_vars(term).empty())
    throw EpskitError("gamma term has unbound parameters: " + to_string(term));
  if (contains_choice(term))
    throw EpskitError("gamma term contains a choice binder; eliminate choice terms first");
  Ptr inst = beta_normalize(subst_var(q->a, q->var, term));
  if (negated) inst = conjugate(inst);
  Sequent next;
  next.push_back(inst);
  for (const auto& h : g) next.push_back(h);
  goals_[goal_idx] = std::move(next);
  record({"gamma", goal_idx, pos, to_string(term), {}, ""});
}

VariableId ProofState::apply_delta_minus(int goal_idx, int pos) {
  const Sequent& g = goal(goal_idx);
  if (pos < 0 || pos >= static_cast<int>(g.size()))
    throw EpskitError("goal " + std::to_string(goal_idx) + " has no formula " +
                      std::to_string(pos));
  Ptr f = g[pos];
  bool plain = f->kind == Kind::Forall;
  bool negated = is_not_of(f, Kind::Exists);
  if (!plain && !negated)
    throw EpskitError("delta- needs a universal principal, got " + to_string(f));
  Ptr q = plain ? f : f->a;
  VariableId z = make_fresh(q->var.name, VarKind::DeltaMinus, q->var.type);
  Ptr inst = beta_normalize(subst_var(q->a, q->var, mk_var(z)));
  if (negated) inst = conjugate(inst);
  Sequent next;
  next.push_back(inst);
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    if (i != pos) next.push_back(g[i]);
  // every rigid variable of the upper sequent must be chosen before z
  std::set<VariableId> rigid;
  for (const auto& h : next) collect_free_vars(h, VarSel::GammaDeltaPlus, rigid);
  CcPair updated = pair_;
  for (const auto& v : rigid) updated.vc.add(v, z);
  auto bad = validate_cc(updated);
  if (!bad.empty())
    throw EpskitError("delta- made the pair inadmissible:\n" + violations_string(bad));
  pair_ = std::move(updated);
  goals_[goal_idx] = std::move(next);
  record({"delta-", goal_idx, pos, to_string(f), {}, z.str()});
  return z;
}

VariableId ProofState::apply_delta_plus(int goal_idx, int pos) {
  const Sequent& g = goal(goal_idx);
  if (pos < 0 || pos >= static_cast<int>(g.size()))
    throw EpskitError("goal " + std::to_string(goal_idx) + " has no formula " +
                      std::to_string(pos));
  Ptr f = g[pos];
  bool plain = f->kind == Kind::Forall;
  bool negated = is_not_of(f, Kind::Exists);
  if (!plain && !negated)
    throw EpskitError("delta+ needs a universal principal, got " + to_string(f));
  Ptr q = plain ? f : f->a;
  VariableId z = make_fresh(q->var.name, VarKind::DeltaPlus, q->var.type);
  Ptr inst = beta_normalize(subst_var(q->a, q->var, mk_var(z)));
  if (negated) inst = conjugate(inst);
  // the committed choice for z searches for a counterexample to the new goal
  Abstraction entry;
  entry.body = conjugate(inst);
  CcPair updated = pair_;
  updated.cc[z] = entry;
  for (const auto& v : free_vars(f, VarSel::AllFree)) updated.vc.add(v, z);
  auto bad = validate_cc(updated);
  if (!bad.empty())
    throw EpskitError("delta+ made the pair inadmissible:\n" + violations_string(bad));
  pair_ = std::move(updated);
  Sequent next;
  next.push_back(inst);
  for (int i = 0; i < static_cast<int>(g.size()); ++i)
    if (i != pos) next.push_back(g[i]);
  goals_[goal_idx] = std::move(next);
  record({"delta+", goal_idx, pos, to_string(f), {}, z.str()});
  return z;
}

// ---------------------------------------------------------------------------
// Instantiation.  Applies to every open goal at once; the substituted
// variables with a condition entry that can still influence a delta-plus
// variable of the goals leave their instantiated commitments behind as
// fresh proof obligations.
// ---------------------------------------------------------------------------

void ProofState::apply_instantiate(const SubstitutionMap& sigma) {
  std::string diag;
  if (!is_r_substitution(pair_.vc, sigma, &diag))
    throw EpskitError("substitution rejected: " + diag);

  Goals old_goals, new_goals;
  std::vector<int> indices;
  for (const auto& [idx, g] : goals_) {
    indices.push_back(idx);
    old_goals.push_back(g);
    Sequent ng;
    for (const auto& f : g) ng.push_back(apply_substitution(f, sigma));
    new_goals.push_back(std::move(ng));
  }
  Goals both = old_goals;
  both.insert(both.end(), new_goals.begin(), new_goals.end());
  std::vector<Ptr> obls = obligations_for(pair_, sigma, both);

  CcPair next = extended_sigma_update(pair_, sigma);
  auto bad = validate_cc(next);
  if (!bad.empty())
    throw EpskitError("substitution made the pair inadmissible:\n" + violations_string(bad));
  pair_ = std::move(next);

  for (std::size_t i = 0; i < indices.size(); ++i) goals_[indices[i]] = new_goals[i];
  std::vector<int> created;
  for (const auto& q : obls) created.push_back(push_goal({q}));

  std::ostringstream payload;
  payload << "{";
  bool first = true;
  for (const auto& [v, t] : sigma.entries) {
    if (!first) payload << ", ";
    first = false;
    payload << v.str() << " := " << to_string(t);
  }
  payload << "}";
  record({"inst", -1, -1, payload.str(), created, ""});
}

// ---------------------------------------------------------------------------
// Closing and lemmas
// ---------------------------------------------------------------------------

void ProofState::apply_close(int goal_idx) {
  const Sequent& g = goal(goal_idx);
  auto finish = [&](const std::string& why) {
    goals_.erase(goal_idx);
    record({"close", goal_idx, -1, why, {}, ""});
  };
  for (const auto& f : g) {
    if (f->kind == Kind::Top) return finish("true");
    if (is_not_of(f, Kind::Bot)) return finish("~false");
    if (f->kind == Kind::Eq && alpha_equal(f->a, f->b))
      return finish(to_string(f) + " (reflexivity)");
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j) continue;
      if (g[j]->kind == Kind::Not && alpha_equal(g[j]->a, g[i]))
        return finish(to_string(g[i]) + " vs " + to_string(g[j]));
    }
  }
  std::string msg = "close failed on goal " + std::to_string(goal_idx) + ": " + to_string(g);
  for (const auto& f : g) {
    if (is_not_of(f, Kind::Eq) && alpha_equal(f->a->a, f->a->b)) {
      msg += "\n  note: " + to_string(f) +
             " denies reflexivity of equality and can never be proved";
      break;
    }
  }
  throw EpskitError(msg);
}

void ProofState::apply_lemma(const std::string& name, int goal_idx) {
  const Sequent& g = goal(goal_idx);
  Ptr lemma;
  if (name.size() > 4 && name.rfind("qc(", 0) == 0 && name.back() == ')') {
    VariableId y = parse_free_ref(name.substr(3, name.size() - 4), frees_);
    if (!pair_.cc.count(y))
      throw EpskitError(y.str() + " has no condition entry; qc needs one");
    lemma = build_QC(pair_, y);
  } else {
    const Lemma* l = prob_.find_lemma(name);
    if (!l) throw EpskitError("unknown lemma: " + name);
    lemma = l->formula;
  }
  Sequent next;
  next.push_back(conjugate(lemma));
  for (const auto& h : g) next.push_back(h);
  goals_[goal_idx] = std::move(next);
  record({"add_lemma", goal_idx, -1, name, {}, to_string(lemma)});
}

// ---------------------------------------------------------------------------
// Script commands
// ---------------------------------------------------------------------------

namespace {

/// splits on top-level commas; chunks without ":=" glue back onto their
// predecessor so lambda parameter lists survive
std::vector<std::string> split_bindings(const std::string& text) {
  std::vector<std::string> raw;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      raw.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  raw.push_back(cur);
  std::vector<std::string> out;
  for (auto& chunk : raw) {
    if (!out.empty() && chunk.find(":=") == std::string::npos)
      out.back() += "," + chunk;
    else
      out.push_back(chunk);
  }
  return out;
}

}  // namespace

void ProofState::run_command(const std::string& line) {
  std::istringstream in(line);
  std::string cmd;
  in >> cmd;
  auto read_int = [&](const char* what) {
    int v;
    if (!(in >> v)) throw EpskitError(std::string("expected ") + what + " in: " + line);
    return v;
  };
  if (cmd == "alpha") {
    int g = read_int("goal"), p = read_int("position");
    apply_alpha(g, p);
  } else if (cmd == "beta") {
    int g = read_int("goal"), p = read_int("position");
    apply_beta(g, p);
  } else if (cmd == "gamma") {
    int g = read_int("goal"), p = read_int("position");
    std::string term;
    std::getline(in, term);
    term = trim(term);
    if (term.empty()) throw EpskitError("gamma needs a term: " + line);
    apply_gamma(g, p, parse_expr(term, prob_.sig, frees_));
  } else if (cmd == "delta-") {
    int g = read_int("goal"), p = read_int("position");
    apply_delta_minus(g, p);
  } else if (cmd == "delta+") {
    int g = read_int("goal"), p = read_int("position");
    apply_delta_plus(g, p);
  } else if (cmd == "inst") {
    std::string rest;
    std::getline(in, rest);
    rest = trim(rest);
    if (!rest.empty() && rest.front() == '{' && rest.back() == '}')
      rest = trim(rest.substr(1, rest.size() - 2));
    SubstitutionMap sigma;
    for (const auto& binding : split_bindings(rest)) {
      std::size_t at = binding.find(":=");
      if (at == std::string::npos)
        throw EpskitError("expected VAR := TERM in: " + binding);
      VariableId v = parse_free_ref(binding.substr(0, at), frees_);
      Ptr t = parse_expr(trim(binding.substr(at + 2)), prob_.sig, frees_);
      if (sigma.entries.count(v))
        throw EpskitError("duplicate substitution entry for " + v.str());
      sigma.entries[v] = t;
    }
    if (sigma.empty()) throw EpskitError("empty substitution: " + line);
    apply_instantiate(sigma);
  } else if (cmd == "close") {
    apply_close(read_int("goal"));
  } else if (cmd == "lemma") {
    std::string name;
    if (!(in >> name)) throw EpskitError("lemma needs a name: " + line);
    int g;
    if (!(in >> g)) g = lowest_open();
    if (g < 0) throw EpskitError("no open goal to add a lemma to");
    apply_lemma(name, g);
  } else {
    throw EpskitError("unknown command: " + cmd);
  }
}

std::string ProofState::render() const {
  std::ostringstream out;
  if (goals_.empty()) {
    out << "no open goals\n";
  } else {
    for (const auto& [idx, g] : goals_) out << "[" << idx << "] " << to_string(g) << "\n";
  }
  if (!pair_.vc.empty()) {
    out << "vc:";
    for (const auto& [a, b] : pair_.vc.edges) out << " " << a.str() << "->" << b.str();
    out << "\n";
  }
  for (const auto& [y, abs] : pair_.cc) {
    out << "cc: " << y.str() << " := " << to_string(abs.as_lambda()) << "\n";
  }
  return out.str();
}

ReplayReport replay_script(ProofState& st, const Script& sc, bool verbose) {
  ReplayReport rep;
  std::ostringstream log;
  for (const auto& [lineno, text] : sc.lines) {
    try {
      st.run_command(text);
    } catch (const EpskitError& err) {
      throw EpskitError(sc.path + ":" + std::to_string(lineno) + ": " + err.what());
    }
    ++rep.steps;
    if (verbose) {
      log << lineno << ": " << text << "\n";
      log << st.render();
    }
  }
  rep.closed = st.closed();
  for (const auto& [idx, g] : st.goals()) rep.open_goals.push_back(idx);
  rep.log = log.str();
  return rep;
}

void eliminate_goal_choices(Problem& prob) {
  std::set<VariableId> reserved;
  for (const auto& v : prob.frees.all()) reserved.insert(v);
  ElimResult r = eliminate_choice_terms(prob.goals, prob.pair, /*share=*/true, reserved);
  prob.goals = std::move(r.goals);
  prob.pair = std::move(r.pair);
  for (const auto& v : r.introduced) prob.frees.declare(v);
}

}  // namespace epskit
