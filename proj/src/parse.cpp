#include "epskit/parse.hpp"

#include <cctype>
#include <vector>

namespace epskit {

void Signature::declare_sort(const std::string& s) {
  if (s == kBoolSort) throw ParseError("sort name 'o' is reserved");
  sorts.insert(s);
}

void Signature::declare_const(const std::string& name, const Type& t) {
  validate_type(t);
  auto [it, fresh] = consts.emplace(name, t);
  if (!fresh) throw ParseError("constant redeclared: " + name);
}

void Signature::validate_type(const Type& t) const {
  if (!has_sort(t.base)) throw ParseError("unknown sort: " + t.base);
  for (const auto& a : t.args) {
    validate_type(a);
    if (a.base == kBoolSort) throw ParseError("argument sort 'o' unsupported");
  }
}

void FreeVarTable::declare(const VariableId& v) {
  auto key = std::make_pair(v.name, v.kind);
  auto [it, fresh] = vars.emplace(key, v);
  if (!fresh) throw ParseError("free variable redeclared: " + v.str());
}

const VariableId* FreeVarTable::find(const std::string& name, VarKind k) const {
  auto it = vars.find(std::make_pair(name, k));
  return it == vars.end() ? nullptr : &it->second;
}

std::vector<VariableId> FreeVarTable::all() const {
  std::vector<VariableId> out;
  for (const auto& [k, v] : vars) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Tokenizer
// ---------------------------------------------------------------------------

namespace {

enum class Tok {
  Ident,      // possibly with ^g / ^d- / ^d+ suffix folded into text
  Sym,        // punctuation and operators
  End,
};

struct Token {
  Tok kind;
  std::string text;
  VarKind suffix = VarKind::Bound;  // for Ident: suffix class, Bound = none
  bool has_suffix = false;
  std::size_t pos = 0;
};

struct Lexer {
  const std::string& src;
  std::size_t i = 0;
  std::vector<Token> toks;

  explicit Lexer(const std::string& s) : src(s) { run(); }

  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    throw ParseError(msg + " at column " + std::to_string(at + 1) + " in: " + src);
  }

  void run() {
    while (i < src.size()) {
      char c = src[i];
      if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
      if (c == '#') break;  // comment to end of line
      std::size_t start = i;
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (i < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
          id += src[i++];
        }
        if (i < src.size() && src[i] == '!' && (id == "ex")) {
          ++i;
          id = "ex!";
        }
        Token t{Tok::Ident, id, VarKind::Bound, false, start};
        if (i < src.size() && src[i] == '^') {
          ++i;
          if (i < src.size() && src[i] == 'g') {
            ++i;
            t.suffix = VarKind::Gamma;
          } else if (i < src.size() && src[i] == 'd') {
            ++i;
            if (i < src.size() && src[i] == '-') { ++i; t.suffix = VarKind::DeltaMinus; }
            else if (i < src.size() && src[i] == '+') { ++i; t.suffix = VarKind::DeltaPlus; }
            else fail("expected '-' or '+' after '^d'", i);
          } else {
            fail("expected 'g' or 'd' after '^'", i);
          }
          t.has_suffix = true;
        }
        toks.push_back(t);
        continue;
      }
      auto sym2 = [&](const char* s) {
        if (src.compare(i, 2, s) == 0) {
          toks.push_back({Tok::Sym, s, VarKind::Bound, false, start});
          i += 2;
          return true;
        }
        return false;
      };
      auto sym3 = [&](const char* s) {
        if (src.compare(i, 3, s) == 0) {
          toks.push_back({Tok::Sym, s, VarKind::Bound, false, start});
          i += 3;
          return true;
        }
        return false;
      };
      if (sym3("<->")) continue;
      if (sym2("->") || sym2("/\\") || sym2("\\/") || sym2("!=") || sym2(":=")) continue;
      if (std::string("().,:=~|{}>").find(c) != std::string::npos) {
        toks.push_back({Tok::Sym, std::string(1, c), VarKind::Bound, false, start});
        ++i;
        continue;
      }
      fail(std::string("unexpected character '") + c + "'", i);
    }
    toks.push_back({Tok::End, "", VarKind::Bound, false, src.size()});
  }
};

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
//   expr   := iff
//   iff    := imp ('<->' imp)?
//   imp    := or ('->' imp)?
//   or     := and ('\/' and)*
//   and    := neg ('/\' neg)*
//   neg    := '~' neg | binder | cmp
//   binder := ('all'|'ex'|'ex!'|'eps'|'iota'|'lambda') v ':' type
//             (',' v ':' type)* '.' neg
//   cmp    := app (('='|'!=') app)?
//   app    := primary ('(' expr (',' expr)* ')')*
//   primary:= 'true' | 'false' | ident | '(' expr ')'
//
// Binders take the shortest body: 'all x:i. A /\ B' is '(all x:i. A) /\ B'.
// A binder whose variable is already bound in scope is rejected.
// ---------------------------------------------------------------------------

struct Parser {
  const Signature& sig;
  const FreeVarTable& frees;
  std::vector<Token> toks;
  std::size_t p = 0;
  std::vector<std::pair<std::string, VariableId>> scope;  // bound variables
  const std::string& src;

  Parser(const std::string& s, const Signature& g, const FreeVarTable& f)
      : sig(g), frees(f), src(s) {
    Lexer lx(s);
    toks = std::move(lx.toks);
  }

  const Token& peek() const { return toks[p]; }
  Token next() { return toks[p++]; }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at column " + std::to_string(peek().pos + 1) + " in: " + src);
  }

  bool eat_sym(const std::string& s) {
    if (peek().kind == Tok::Sym && peek().text == s) { ++p; return true; }
    return false;
  }

  void expect_sym(const std::string& s) {
    if (!eat_sym(s)) fail("expected '" + s + "'");
  }

  bool peek_ident(const std::string& s) const {
    return peek().kind == Tok::Ident && !peek().has_suffix && peek().text == s;
  }

  Type parse_type_expr() {
    Type first = parse_type_atom();
    if (eat_sym(">")) {
      Type rest = parse_type_expr();
      Type out;
      out.args.push_back(first);
      out.args.insert(out.args.end(), rest.args.begin(), rest.args.end());
      out.base = rest.base;
      return out;
    }
    return first;
  }

  Type parse_type_atom() {
    if (eat_sym("(")) {
      Type t = parse_type_expr();
      expect_sym(")");
      return t;
    }
    if (peek().kind != Tok::Ident) fail("expected a sort name");
    Token t = next();
    if (!sig.has_sort(t.text)) fail("unknown sort '" + t.text + "'");
    return base_type(t.text);
  }

  Ptr parse() {
    Ptr e = expr();
    if (peek().kind != Tok::End) fail("trailing input");
    return e;
  }

  Ptr expr() { return iff(); }

  Ptr iff() {
    Ptr a = imp();
    if (eat_sym("<->")) {
      Ptr b = imp();
      return mk_iff(a, b);
    }
    return a;
  }

  Ptr imp() {
    Ptr a = orf();
    if (eat_sym("->")) {
      Ptr b = imp();
      return mk_imp(a, b);
    }
    return a;
  }

  Ptr orf() {
    Ptr a = andf();
    while (eat_sym("\\/")) a = mk_or(a, andf());
    return a;
  }

  Ptr andf() {
    Ptr a = neg();
    while (eat_sym("/\\")) a = mk_and(a, neg());
    return a;
  }

  Ptr neg() {
    if (eat_sym("~")) return conjugate_safe(neg());
    if (peek().kind == Tok::Ident && !peek().has_suffix) {
      const std::string& kw = peek().text;
      if (kw == "all" || kw == "ex" || kw == "ex!" || kw == "eps" || kw == "iota" ||
          kw == "lambda") {
        return binder();
      }
    }
    return cmp();
  }

  static Ptr conjugate_safe(Ptr a) { return mk_not(std::move(a)); }

  Ptr binder() {
    Token kw = next();
    std::vector<VariableId> vars;
    while (true) {
      if (peek().kind != Tok::Ident || peek().has_suffix) fail("expected a bound variable");
      Token v = next();
      for (const auto& [n, _] : scope) {
        if (n == v.text)
          fail("variable '" + v.text + "' is already bound; nested binders on one name "
               "are not well-formed");
      }
      expect_sym(":");
      Type t = parse_type_expr();
      if (kw.text != "lambda" && !t.is_base())
        fail("binder '" + kw.text + "' ranges over base sorts only");
      vars.push_back(VariableId{v.text, VarKind::Bound, t, fresh_uid()});
      if (!eat_sym(",")) break;
    }
    expect_sym(".");
    for (const auto& v : vars) scope.emplace_back(v.name, v);
    Ptr body = neg();
    for (std::size_t i = 0; i < vars.size(); ++i) scope.pop_back();
    Kind k;
    if (kw.text == "all") k = Kind::Forall;
    else if (kw.text == "ex") k = Kind::Exists;
    else if (kw.text == "ex!") k = Kind::ExUnique;
    else if (kw.text == "eps") k = Kind::Eps;
    else if (kw.text == "iota") k = Kind::Iota;
    else k = Kind::Lam;
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = mk_binder(k, *it, body);
    return body;
  }

  Ptr cmp() {
    Ptr a = app();
    if (eat_sym("=")) {
      Ptr b = app();
      return mk_eq(a, b);
    }
    if (eat_sym("!=")) {
      Ptr b = app();
      return mk_not(mk_eq(a, b));
    }
    return a;
  }

  Ptr app() {
    Ptr head = primary();
    while (peek().kind == Tok::Sym && peek().text == "(") {
      ++p;
      std::vector<Ptr> args;
      if (!eat_sym(")")) {
        args.push_back(expr());
        while (eat_sym(",")) args.push_back(expr());
        expect_sym(")");
      }
      head = mk_app(head, args);
    }
    return head;
  }

  Ptr primary() {
    if (eat_sym("(")) {
      Ptr e = expr();
      expect_sym(")");
      return e;
    }
    if (peek().kind != Tok::Ident) fail("expected an identifier");
    Token t = next();
    if (!t.has_suffix) {
      if (t.text == "true") return mk_top();
      if (t.text == "false") return mk_bot();
      for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
        if (it->first == t.text) return mk_var(it->second);
      }
      auto cit = sig.consts.find(t.text);
      if (cit != sig.consts.end()) return mk_const(cit->first, cit->second);
      fail("unknown identifier '" + t.text + "'");
    }
    const VariableId* v = frees.find(t.text, t.suffix);
    if (!v) fail("undeclared free variable '" + t.text + kind_suffix(t.suffix) + "'");
    return mk_var(*v);
  }
};

}  // namespace

Ptr parse_expr(const std::string& text, const Signature& sig, const FreeVarTable& frees) {
  Parser ps(text, sig, frees);
  Ptr e = ps.parse();
  type_of(e);  // force a type check
  return e;
}

Ptr parse_formula(const std::string& text, const Signature& sig, const FreeVarTable& frees) {
  Ptr e = parse_expr(text, sig, frees);
  if (!is_formula(e))
    throw ParseError("expression has type " + type_of(e).str() + ", expected o: " + text);
  return e;
}

Type parse_type(const std::string& text, const Signature& sig) {
  FreeVarTable none;
  Parser ps(text, sig, none);
  Type t = ps.parse_type_expr();
  if (ps.peek().kind != Tok::End) throw ParseError("trailing input in type: " + text);
  sig.validate_type(t);
  return t;
}

VariableId parse_free_ref(const std::string& text, const FreeVarTable& frees) {
  std::size_t a = text.find_first_not_of(" \t");
  std::size_t b = text.find_last_not_of(" \t");
  if (a == std::string::npos) throw ParseError("expected a free variable reference");
  std::string t = text.substr(a, b - a + 1);
  VarKind kind;
  std::string name;
  if (t.size() > 3 && t.substr(t.size() - 3) == "^d-") {
    kind = VarKind::DeltaMinus;
    name = t.substr(0, t.size() - 3);
  } else if (t.size() > 3 && t.substr(t.size() - 3) == "^d+") {
    kind = VarKind::DeltaPlus;
    name = t.substr(0, t.size() - 3);
  } else if (t.size() > 2 && t.substr(t.size() - 2) == "^g") {
    kind = VarKind::Gamma;
    name = t.substr(0, t.size() - 2);
  } else {
    throw ParseError("expected a suffixed free variable (x^g, x^d-, x^d+), got '" + t + "'");
  }
  const VariableId* v = frees.find(name, kind);
  if (!v) throw ParseError("undeclared free variable '" + t + "'");
  return *v;
}

Sequent parse_sequent(const std::string& text, const Signature& sig, const FreeVarTable& frees) {
  // split on '|' outside parentheses/braces
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == '{') ++depth;
    if (c == ')' || c == '}') --depth;
    if (c == '|' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  Sequent s;
  for (const auto& part : parts) s.push_back(parse_formula(part, sig, frees));
  return s;
}

}  // namespace epskit
