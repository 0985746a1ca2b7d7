// Copyright 2026 the axmm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "axmm/catdsl.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "axmm/errors.hpp"

namespace axmm::cat {
namespace {

enum class Tok {
  Ident,
  KwLet,
  KwAcyclic,
  KwIrreflexive,
  KwEmpty,
  KwUndefinedUnless,
  KwAs,
  KwWitness,
  KwLinear,
  KwOver,
  Eq,
  LBrack,
  RBrack,
  LParen,
  RParen,
  InvOp,  // ^-1
  Maybe,  // ?
  Plus,   // +
  Tilde,  // ~
  Semi,   // ;
  Amp,    // &
  Backslash,
  Pipe,  // |
  Star,  // *
  End,
};

struct Token {
  Tok t;
  std::string text;
  int line;
  int col;
};

Tok keyword_of(const std::string& w) {
  if (w == "let") return Tok::KwLet;
  if (w == "acyclic") return Tok::KwAcyclic;
  if (w == "irreflexive") return Tok::KwIrreflexive;
  if (w == "empty") return Tok::KwEmpty;
  if (w == "undefined_unless") return Tok::KwUndefinedUnless;
  if (w == "as") return Tok::KwAs;
  if (w == "witness") return Tok::KwWitness;
  if (w == "linear") return Tok::KwLinear;
  if (w == "over") return Tok::KwOver;
  return Tok::Ident;
}

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

// Identifiers admit digits, underscores, primes, and interior hyphens so
// that names like rs', r1 and new-incl lex as single tokens. A hyphen never
// starts an identifier and '^' always begins the inverse operator, so there
// is no ambiguity with ^-1.
bool ident_cont(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
         c == '\'' || c == '-';
}

std::vector<Token> lex_line(const std::string& s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    const int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#') break;
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && ident_cont(s[j])) ++j;
      std::string word = s.substr(i, j - i);
      out.push_back({keyword_of(word), std::move(word), line, col});
      i = j;
      continue;
    }
    switch (c) {
      case '=': out.push_back({Tok::Eq, "=", line, col}); break;
      case '[': out.push_back({Tok::LBrack, "[", line, col}); break;
      case ']': out.push_back({Tok::RBrack, "]", line, col}); break;
      case '(': out.push_back({Tok::LParen, "(", line, col}); break;
      case ')': out.push_back({Tok::RParen, ")", line, col}); break;
      case '?': out.push_back({Tok::Maybe, "?", line, col}); break;
      case '+': out.push_back({Tok::Plus, "+", line, col}); break;
      case '~': out.push_back({Tok::Tilde, "~", line, col}); break;
      case ';': out.push_back({Tok::Semi, ";", line, col}); break;
      case '&': out.push_back({Tok::Amp, "&", line, col}); break;
      case '\\': out.push_back({Tok::Backslash, "\\", line, col}); break;
      case '|': out.push_back({Tok::Pipe, "|", line, col}); break;
      case '*': out.push_back({Tok::Star, "*", line, col}); break;
      case '^':
        if (i + 2 < s.size() && s[i + 1] == '-' && s[i + 2] == '1') {
          out.push_back({Tok::InvOp, "^-1", line, col});
          i += 2;
          break;
        }
        throw ParseError("'^' must be followed by -1", line, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         line, col);
    }
    ++i;
  }
  out.push_back({Tok::End, "", line, static_cast<int>(s.size()) + 1});
  return out;
}

ExprPtr mk(ExprOp op, const Token& at, ExprPtr a = nullptr,
           ExprPtr b = nullptr, std::string name = "") {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->name = std::move(name);
  e->a = std::move(a);
  e->b = std::move(b);
  e->line = at.line;
  e->col = at.col;
  return e;
}

class LineParser {
 public:
  explicit LineParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok t) const { return peek().t == t; }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.t != Tok::End) ++pos_;
    return t;
  }

  Token expect(Tok t, const char* what) {
    if (!at(t)) fail(std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(msg + (t.t == Tok::End ? " at end of line"
                                            : " before '" + t.text + "'"),
                     t.line, t.col);
  }

  // or := diff ('|' diff)*
  ExprPtr parse_expr() {
    ExprPtr e = parse_diff();
    while (at(Tok::Pipe)) {
      Token op = next();
      e = mk(ExprOp::Or, op, e, parse_diff());
    }
    return e;
  }

 private:
  // diff := and ('\' and)*, left associative
  ExprPtr parse_diff() {
    ExprPtr e = parse_and();
    while (at(Tok::Backslash)) {
      Token op = next();
      e = mk(ExprOp::Diff, op, e, parse_and());
    }
    return e;
  }

  // and := seq ('&' seq)*
  ExprPtr parse_and() {
    ExprPtr e = parse_seq();
    while (at(Tok::Amp)) {
      Token op = next();
      e = mk(ExprOp::And, op, e, parse_seq());
    }
    return e;
  }

  // seq := unary ((';' | '*') unary)*; '*' shares this level
  ExprPtr parse_seq() {
    ExprPtr e = parse_unary();
    while (at(Tok::Semi) || at(Tok::Star)) {
      Token op = next();
      e = mk(op.t == Tok::Semi ? ExprOp::Seq : ExprOp::Prod, op, e,
             parse_unary());
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (at(Tok::Tilde)) {
      Token op = next();
      return mk(ExprOp::Complement, op, parse_unary());
    }
    return parse_postfix();
  }

  ExprPtr parse_postfix() {
    ExprPtr e = parse_primary();
    for (;;) {
      if (at(Tok::InvOp)) {
        e = mk(ExprOp::Inverse, next(), e);
      } else if (at(Tok::Maybe)) {
        e = mk(ExprOp::Maybe, next(), e);
      } else if (at(Tok::Plus)) {
        e = mk(ExprOp::Plus, next(), e);
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_primary() {
    if (at(Tok::Ident)) {
      Token t = next();
      return mk(ExprOp::Ident, t, nullptr, nullptr, t.text);
    }
    if (at(Tok::LBrack)) {
      Token t = next();
      ExprPtr inner = parse_expr();
      expect(Tok::RBrack, "']'");
      return mk(ExprOp::Bracket, t, inner);
    }
    if (at(Tok::LParen)) {
      next();
      ExprPtr inner = parse_expr();
      expect(Tok::RParen, "')'");
      return inner;
    }
    fail("expected an expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

enum class Sort { Set, Rel };
using SortTable = std::map<std::string, Sort, std::less<>>;

SortTable base_sorts() {
  SortTable t;
  for (const char* s : {"R", "W", "F", "A", "I", "RLX", "ACQ", "REL", "AR",
                        "SC", "WI", "WG", "DV", "ALL", "nal", "G", "L",
                        "fgb"}) {
    t.emplace(s, Sort::Set);
  }
  for (const char* r :
       {"E2", "id", "loc", "val", "sb", "thd", "wg", "dv", "rf", "mo"}) {
    t.emplace(r, Sort::Rel);
  }
  return t;
}

[[noreturn]] void sort_fail(const Expr& e, const std::string& msg) {
  throw ParseError(msg, e.line, e.col);
}

// Static sort of an expression; `defining` is the name currently being
// bound, so self-reference is reported as recursion rather than as unknown.
Sort sort_of(const Expr& e, const SortTable& names,
             std::string_view defining) {
  switch (e.op) {
    case ExprOp::Ident: {
      if (!defining.empty() && e.name == defining) {
        sort_fail(e, "recursive binding of '" + e.name + "'");
      }
      auto it = names.find(e.name);
      if (it == names.end()) {
        sort_fail(e, "unknown identifier '" + e.name + "'");
      }
      return it->second;
    }
    case ExprOp::Bracket:
      if (sort_of(*e.a, names, defining) != Sort::Set) {
        sort_fail(e, "[ ] expects a set");
      }
      return Sort::Rel;
    case ExprOp::Inverse:
    case ExprOp::Maybe:
    case ExprOp::Plus:
    case ExprOp::Complement:
      if (sort_of(*e.a, names, defining) != Sort::Rel) {
        sort_fail(e, "operator applies to relations only");
      }
      return Sort::Rel;
    case ExprOp::Seq:
      if (sort_of(*e.a, names, defining) != Sort::Rel ||
          sort_of(*e.b, names, defining) != Sort::Rel) {
        sort_fail(e, "';' composes relations");
      }
      return Sort::Rel;
    case ExprOp::Prod:
      if (sort_of(*e.a, names, defining) != Sort::Set ||
          sort_of(*e.b, names, defining) != Sort::Set) {
        sort_fail(e, "'*' takes two sets");
      }
      return Sort::Rel;
    case ExprOp::And:
    case ExprOp::Or:
    case ExprOp::Diff: {
      Sort sa = sort_of(*e.a, names, defining);
      Sort sb = sort_of(*e.b, names, defining);
      if (sa != sb) sort_fail(e, "operands mix a set with a relation");
      return sa;
    }
  }
  sort_fail(e, "malformed expression");
}

const EventSet& as_set(const Value& v, const Expr& e) {
  if (const EventSet* s = std::get_if<EventSet>(&v)) return *s;
  throw EvalError("expected a set at line " + std::to_string(e.line));
}

const Relation& as_rel(const Value& v, const Expr& e) {
  if (const Relation* r = std::get_if<Relation>(&v)) return *r;
  throw EvalError("expected a relation at line " + std::to_string(e.line));
}

}  // namespace

ModelDef parse_model(const std::string& text) {
  ModelDef m;
  SortTable names = base_sorts();
  std::istringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    LineParser p(lex_line(line, line_no));
    if (p.at(Tok::End)) continue;
    switch (p.peek().t) {
      case Tok::KwLet: {
        p.next();
        Token name = p.expect(Tok::Ident, "a binding name");
        p.expect(Tok::Eq, "'='");
        ExprPtr e = p.parse_expr();
        p.expect(Tok::End, "end of line");
        Sort s = sort_of(*e, names, name.text);
        names.insert_or_assign(name.text, s);
        m.bindings.emplace_back(name.text, std::move(e));
        break;
      }
      case Tok::KwAcyclic:
      case Tok::KwIrreflexive:
      case Tok::KwEmpty: {
        Token kw = p.next();
        ExprPtr e = p.parse_expr();
        p.expect(Tok::KwAs, "'as'");
        Token name = p.expect(Tok::Ident, "an axiom name");
        p.expect(Tok::End, "end of line");
        Sort s = sort_of(*e, names, "");
        Constraint c;
        c.undefined_behaviour = false;
        c.pred = kw.t == Tok::KwAcyclic      ? Pred::Acyclic
                 : kw.t == Tok::KwIrreflexive ? Pred::Irreflexive
                                              : Pred::Empty;
        if (c.pred != Pred::Empty && s != Sort::Rel) {
          throw ParseError("acyclic/irreflexive expect a relation", kw.line,
                           kw.col);
        }
        c.expr = std::move(e);
        c.name = name.text;
        m.constraints.push_back(std::move(c));
        break;
      }
      case Tok::KwUndefinedUnless: {
        Token kw = p.next();
        p.expect(Tok::KwEmpty, "'empty'");
        ExprPtr e = p.parse_expr();
        p.expect(Tok::KwAs, "'as'");
        Token name = p.expect(Tok::Ident, "an axiom name");
        p.expect(Tok::End, "end of line");
        sort_of(*e, names, "");
        Constraint c;
        c.undefined_behaviour = true;
        c.pred = Pred::Empty;
        c.expr = std::move(e);
        c.name = name.text;
        (void)kw;
        m.constraints.push_back(std::move(c));
        break;
      }
      case Tok::KwWitness: {
        p.next();
        Token name = p.expect(Tok::Ident, "a witness name");
        p.expect(Tok::KwLinear, "'linear'");
        p.expect(Tok::KwOver, "'over'");
        ExprPtr e = p.parse_expr();
        p.expect(Tok::End, "end of line");
        if (sort_of(*e, names, "") != Sort::Set) {
          throw ParseError("a witness is linear over a set", name.line,
                           name.col);
        }
        names.insert_or_assign(name.text, Sort::Rel);
        m.witness_decls.push_back({name.text, std::move(e)});
        break;
      }
      default:
        p.fail("expected a statement keyword");
    }
  }
  return m;
}

Value eval_expr(const Expr& e, const Env& env) {
  switch (e.op) {
    case ExprOp::Ident: {
      auto it = env.find(e.name);
      if (it == env.end()) throw EvalError("unbound name '" + e.name + "'");
      return it->second;
    }
    case ExprOp::Bracket:
      return Relation::identity_on(as_set(eval_expr(*e.a, env), *e.a));
    case ExprOp::Inverse:
      return as_rel(eval_expr(*e.a, env), *e.a).inverse();
    case ExprOp::Maybe:
      return as_rel(eval_expr(*e.a, env), *e.a).refl_closure();
    case ExprOp::Plus:
      return as_rel(eval_expr(*e.a, env), *e.a).trans_closure();
    case ExprOp::Complement:
      return ~as_rel(eval_expr(*e.a, env), *e.a);
    case ExprOp::Seq:
      return as_rel(eval_expr(*e.a, env), *e.a)
          .compose(as_rel(eval_expr(*e.b, env), *e.b));
    case ExprOp::Prod:
      return Relation::product(as_set(eval_expr(*e.a, env), *e.a),
                               as_set(eval_expr(*e.b, env), *e.b));
    case ExprOp::And: {
      Value a = eval_expr(*e.a, env);
      Value b = eval_expr(*e.b, env);
      if (std::holds_alternative<EventSet>(a)) {
        return as_set(a, *e.a) & as_set(b, *e.b);
      }
      return as_rel(a, *e.a) & as_rel(b, *e.b);
    }
    case ExprOp::Or: {
      Value a = eval_expr(*e.a, env);
      Value b = eval_expr(*e.b, env);
      if (std::holds_alternative<EventSet>(a)) {
        return as_set(a, *e.a) | as_set(b, *e.b);
      }
      return as_rel(a, *e.a) | as_rel(b, *e.b);
    }
    case ExprOp::Diff: {
      Value a = eval_expr(*e.a, env);
      Value b = eval_expr(*e.b, env);
      if (std::holds_alternative<EventSet>(a)) {
        return as_set(a, *e.a) - as_set(b, *e.b);
      }
      return as_rel(a, *e.a) - as_rel(b, *e.b);
    }
  }
  throw EvalError("malformed expression");
}

Env eval_bindings(const ModelDef& m, Env env) {
  for (const auto& [name, expr] : m.bindings) {
    env.insert_or_assign(name, eval_expr(*expr, env));
  }
  return env;
}

bool constraint_holds(const Constraint& c, const Env& env) {
  Value v = eval_expr(*c.expr, env);
  switch (c.pred) {
    case Pred::Acyclic:
      return as_rel(v, *c.expr).acyclic();
    case Pred::Irreflexive:
      return as_rel(v, *c.expr).irreflexive();
    case Pred::Empty:
      if (const EventSet* s = std::get_if<EventSet>(&v)) return s->empty();
      return as_rel(v, *c.expr).is_empty();
  }
  throw EvalError("malformed constraint");
}

Verdict eval_model_env(const ModelDef& m, const Env& base) {
  Env env = eval_bindings(m, base);
  Verdict v;
  v.consistent = true;
  for (const Constraint& c : m.constraints) {
    if (c.undefined_behaviour) continue;
    if (!constraint_holds(c, env)) {
      v.consistent = false;
      v.failed_axioms.push_back(c.name);
    }
  }
  if (v.consistent) {
    for (const Constraint& c : m.constraints) {
      if (!c.undefined_behaviour) continue;
      if (!constraint_holds(c, env)) {
        v.faulty = true;
        v.failed_axioms.push_back(c.name);
      }
    }
  }
  return v;
}

Verdict eval_model(const ModelDef& m, const Execution& x, const Witness& w) {
  return eval_model_env(m, base_env(x, w));
}

}  // namespace axmm::cat
