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

#include "axmm/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "axmm/errors.hpp"

namespace axmm::frontend {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Tok {
  enum class K : std::uint8_t {
    Ident, Int, LBrace, RBrace, LParen, RParen, Semi, Comma, Assign, EqEq,
    NeEq, Question, Colon, Plus, Minus, Star, Par2, Par3, Par4, Conj, End,
  };
  K k = K::End;
  std::string text;
  std::int64_t num = 0;
  int line = 1;
  int col = 1;
};

[[noreturn]] void fail(const std::string& msg, int line, int col) {
  throw ParseError(msg, line, col);
}
[[noreturn]] void fail(const std::string& msg, const Tok& t) {
  fail(msg, t.line, t.col);
}

std::vector<Tok> lex(const std::string& text) {
  std::vector<Tok> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto bump = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < n) {
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump(1);
      continue;
    }
    if (c == '#' || (c == '/' && i + 1 < n && text[i + 1] == '/')) {
      while (i < n && text[i] != '\n') bump(1);
      continue;
    }
    Tok t;
    t.line = line;
    t.col = col;
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
      std::size_t j = i;
      while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) !=
                           0 ||
                       text[j] == '_')) {
        ++j;
      }
      t.k = Tok::K::Ident;
      t.text = text.substr(i, j - i);
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::size_t j = i;
      while (j < n &&
             std::isdigit(static_cast<unsigned char>(text[j])) != 0) {
        ++j;
      }
      const std::string digits = text.substr(i, j - i);
      errno = 0;
      char* end = nullptr;
      const long long v = std::strtoll(digits.c_str(), &end, 10);
      if (errno == ERANGE) fail("integer literal out of range", line, col);
      t.k = Tok::K::Int;
      t.num = v;
      t.text = digits;
      bump(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '|') {
      std::size_t j = i;
      while (j < n && text[j] == '|') ++j;
      const std::size_t bars = j - i;
      if (bars == 2) {
        t.k = Tok::K::Par2;
      } else if (bars == 3) {
        t.k = Tok::K::Par3;
      } else if (bars == 4) {
        t.k = Tok::K::Par4;
      } else {
        fail("expected '||', '|||', or '||||'", line, col);
      }
      bump(bars);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '\\') {
      t.k = Tok::K::Conj;
      bump(2);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '=' && i + 1 < n && text[i + 1] == '=') {
      t.k = Tok::K::EqEq;
      bump(2);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '!' && i + 1 < n && text[i + 1] == '=') {
      t.k = Tok::K::NeEq;
      bump(2);
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '{': t.k = Tok::K::LBrace; break;
      case '}': t.k = Tok::K::RBrace; break;
      case '(': t.k = Tok::K::LParen; break;
      case ')': t.k = Tok::K::RParen; break;
      case ';': t.k = Tok::K::Semi; break;
      case ',': t.k = Tok::K::Comma; break;
      case '=': t.k = Tok::K::Assign; break;
      case '?': t.k = Tok::K::Question; break;
      case ':': t.k = Tok::K::Colon; break;
      case '+': t.k = Tok::K::Plus; break;
      case '-': t.k = Tok::K::Minus; break;
      case '*': t.k = Tok::K::Star; break;
      default:
        fail(std::string("unexpected character '") + c + "'", line, col);
    }
    bump(1);
    out.push_back(std::move(t));
  }
  Tok end;
  end.k = Tok::K::End;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

const std::unordered_set<std::string>& reserved_words() {
  static const std::unordered_set<std::string> r = {
      "test",  "c11",   "opencl",    "global", "local", "global_fgb",
      "atomic", "int",  "store",     "load",   "fetch_inc", "fence",
      "if",    "else",  "while",     "exists", "rlx",   "acq",
      "rel",   "ar",    "sc",        "con",    "consume", "wi",
      "wg",    "dv",    "all",       "G",      "L",     "GL",
  };
  return r;
}

// ---------------------------------------------------------------------------
// Parser

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& options)
      : toks_(lex(text)), opts_(options) {}

  LitmusProgram parse() {
    expect_word("test");
    prog_.name = take_name("test name");
    const Tok dialect = expect(Tok::K::Ident, "'c11' or 'opencl'");
    if (dialect.text == "opencl") {
      prog_.opencl = true;
    } else if (dialect.text != "c11") {
      fail("expected 'c11' or 'opencl'", dialect);
    }
    while (at_decl()) parse_decl();
    parse_threads();
    if (peek().k == Tok::K::Ident && peek().text == "exists") {
      parse_query();
    }
    if (peek().k != Tok::K::End) fail("trailing input after test", peek());
    check_local_confinement();
    return std::move(prog_);
  }

 private:
  const Tok& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  Tok get() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  Tok expect(Tok::K k, const std::string& what) {
    Tok t = get();
    if (t.k != k) fail("expected " + what, t);
    return t;
  }
  void expect_word(const std::string& w) {
    const Tok t = get();
    if (t.k != Tok::K::Ident || t.text != w) fail("expected '" + w + "'", t);
  }
  std::string take_name(const std::string& what) {
    const Tok t = expect(Tok::K::Ident, what);
    if (reserved_words().count(t.text) != 0) {
      fail("'" + t.text + "' is a reserved word", t);
    }
    return t.text;
  }

  bool at_decl() const {
    if (peek().k != Tok::K::Ident) return false;
    const std::string& w = peek().text;
    return w == "global" || w == "local" || w == "global_fgb" ||
           w == "atomic" || w == "int";
  }

  void parse_decl() {
    Location loc;
    loc.region = Region::C11;
    bool has_region = false;
    Tok t = peek();
    if (t.k == Tok::K::Ident &&
        (t.text == "global" || t.text == "local" || t.text == "global_fgb")) {
      if (!prog_.opencl) {
        fail("memory regions are only valid in opencl tests", t);
      }
      loc.region = t.text == "global"  ? Region::Global
                   : t.text == "local" ? Region::Local
                                       : Region::GlobalFgb;
      has_region = true;
      get();
    }
    if (peek().k == Tok::K::Ident && peek().text == "atomic") {
      loc.atomic = true;
      get();
    }
    const Tok kw = get();
    if (kw.k != Tok::K::Ident || kw.text != "int") {
      fail("expected 'int' in declaration", kw);
    }
    if (prog_.opencl && !has_region) {
      fail("opencl locations need a region (global, local, or global_fgb)",
           kw);
    }
    const Tok name = expect(Tok::K::Ident, "location name");
    if (reserved_words().count(name.text) != 0) {
      fail("'" + name.text + "' is a reserved word", name);
    }
    if (prog_.location_index(name.text) >= 0) {
      fail("location '" + name.text + "' declared twice", name);
    }
    loc.name = name.text;
    std::int64_t init = 0;
    if (peek().k == Tok::K::Assign) {
      get();
      bool neg = false;
      if (peek().k == Tok::K::Minus) {
        neg = true;
        get();
      }
      const Tok v = expect(Tok::K::Int, "integer initializer");
      init = neg ? -v.num : v.num;
    }
    expect(Tok::K::Semi, "';' after declaration");
    prog_.locations.push_back(std::move(loc));
    prog_.initial.push_back(init);
  }

  void parse_threads() {
    prog_.tree.push_back({});
    prog_.tree.back().push_back({});
    for (;;) {
      ThreadBlock b;
      expect(Tok::K::LBrace, "'{' starting a thread");
      while (peek().k != Tok::K::RBrace) b.body.push_back(parse_stmt());
      get();  // RBrace
      prog_.tree.back().back().push_back(std::move(b));
      const Tok sep = peek();
      if (sep.k == Tok::K::Par2) {
        get();
      } else if (sep.k == Tok::K::Par3) {
        if (!prog_.opencl) {
          fail("c11 tests have a single work-group; separate threads with "
               "'||'", sep);
        }
        get();
        prog_.tree.back().push_back({});
      } else if (sep.k == Tok::K::Par4) {
        if (!prog_.opencl) {
          fail("c11 tests have a single device; separate threads with '||'",
               sep);
        }
        get();
        prog_.tree.push_back({});
        prog_.tree.back().push_back({});
      } else {
        break;
      }
    }
  }

  // --- statements ---

  Stmt parse_stmt() {
    const Tok t = peek();
    if (t.k == Tok::K::Star) return parse_store_na();
    if (t.k != Tok::K::Ident) fail("expected a statement", t);
    if (t.text == "store") return parse_store();
    if (t.text == "fence") return parse_fence();
    if (t.text == "if") return parse_if();
    if (t.text == "while") return parse_while();
    return parse_reg_stmt();
  }

  int location_of(const Tok& name, bool must_be_atomic,
                  const char* op) const {
    const int l = prog_.location_index(name.text);
    if (l < 0) fail("undeclared location '" + name.text + "'", name);
    if (must_be_atomic && !prog_.locations[l].atomic) {
      fail(std::string(op) + " needs an atomic location; '" + name.text +
               "' is plain (use *" + name.text + ")",
           name);
    }
    return l;
  }

  MemoryOrder parse_order(const std::set<MemoryOrder>& allowed,
                          const char* op) {
    const Tok t = expect(Tok::K::Ident, "a memory order");
    if (t.text == "con" || t.text == "consume") {
      fail("the consume order is not supported", t);
    }
    MemoryOrder o;
    if (t.text == "rlx") {
      o = MemoryOrder::RLX;
    } else if (t.text == "acq") {
      o = MemoryOrder::ACQ;
    } else if (t.text == "rel") {
      o = MemoryOrder::REL;
    } else if (t.text == "ar") {
      o = MemoryOrder::AR;
    } else if (t.text == "sc") {
      o = MemoryOrder::SC;
    } else {
      fail("unknown memory order '" + t.text + "'", t);
    }
    if (allowed.count(o) == 0) {
      fail(std::string("a ") + op + " cannot use order '" + t.text + "'", t);
    }
    return o;
  }

  Scope parse_scope() {
    const Tok t = expect(Tok::K::Ident, "a memory scope");
    if (!prog_.opencl) {
      fail("memory scopes are only valid in opencl tests", t);
    }
    if (t.text == "wi") {
      if (!opts_.allow_wi) {
        fail("the work-item scope 'wi' is disabled (enable it explicitly)", t);
      }
      return Scope::WI;
    }
    if (t.text == "wg") return Scope::WG;
    if (t.text == "dv") return Scope::DV;
    if (t.text == "all") return Scope::ALL;
    fail("unknown memory scope '" + t.text + "'", t);
  }

  void finish_atomic_args(Stmt& s, const std::set<MemoryOrder>& orders,
                          const char* op) {
    s.ord = MemoryOrder::SC;
    s.scope = prog_.opencl ? std::optional<Scope>(Scope::DV) : std::nullopt;
    if (peek().k == Tok::K::Comma) {
      get();
      s.ord = parse_order(orders, op);
      if (peek().k == Tok::K::Comma) {
        get();
        s.scope = parse_scope();
      }
    }
    expect(Tok::K::RParen, "')'");
  }

  Stmt parse_store() {
    Stmt s;
    s.kind = Stmt::Kind::Store;
    s.line = peek().line;
    get();  // store
    expect(Tok::K::LParen, "'('");
    const Tok loc = expect(Tok::K::Ident, "location name");
    location_of(loc, true, "store");
    s.loc = loc.text;
    expect(Tok::K::Comma, "',' before the stored value");
    s.value = parse_expr();
    finish_atomic_args(
        s, {MemoryOrder::RLX, MemoryOrder::REL, MemoryOrder::SC}, "store");
    expect(Tok::K::Semi, "';'");
    return s;
  }

  Stmt parse_fence() {
    Stmt s;
    s.kind = Stmt::Kind::Fence;
    s.line = peek().line;
    get();  // fence
    expect(Tok::K::LParen, "'('");
    if (peek().k == Tok::K::Ident &&
        (peek().text == "G" || peek().text == "L" || peek().text == "GL")) {
      const Tok r = get();
      if (!prog_.opencl) {
        fail("fence region sets are only valid in opencl tests", r);
      }
      s.fence_global = r.text == "G" || r.text == "GL";
      s.fence_local = r.text == "L" || r.text == "GL";
      if (peek().k == Tok::K::Comma) {
        get();
      } else if (peek().k != Tok::K::RParen) {
        fail("expected ',' or ')' after the fence region set", peek());
      }
    } else if (prog_.opencl) {
      fail("opencl fences need a region set: G, L, or GL", peek());
    }
    s.ord = MemoryOrder::SC;
    s.scope = prog_.opencl ? std::optional<Scope>(Scope::DV) : std::nullopt;
    if (peek().k != Tok::K::RParen) {
      s.ord = parse_order({MemoryOrder::ACQ, MemoryOrder::REL,
                           MemoryOrder::AR, MemoryOrder::SC},
                          "fence");
      if (peek().k == Tok::K::Comma) {
        get();
        s.scope = parse_scope();
      }
    }
    expect(Tok::K::RParen, "')'");
    expect(Tok::K::Semi, "';'");
    return s;
  }

  Stmt parse_store_na() {
    Stmt s;
    s.kind = Stmt::Kind::StoreNa;
    s.line = peek().line;
    get();  // '*'
    const Tok loc = expect(Tok::K::Ident, "location name");
    location_of(loc, false, "plain store");
    s.loc = loc.text;
    expect(Tok::K::Assign, "'='");
    s.value = parse_expr();
    expect(Tok::K::Semi, "';'");
    return s;
  }

  Stmt parse_if() {
    Stmt s;
    s.kind = Stmt::Kind::If;
    s.line = peek().line;
    get();  // if
    expect(Tok::K::LParen, "'('");
    s.value = parse_expr();
    expect(Tok::K::RParen, "')'");
    expect(Tok::K::LBrace, "'{'");
    while (peek().k != Tok::K::RBrace) s.body.push_back(parse_stmt());
    get();
    if (peek().k == Tok::K::Ident && peek().text == "else") {
      get();
      expect(Tok::K::LBrace, "'{'");
      while (peek().k != Tok::K::RBrace) s.else_body.push_back(parse_stmt());
      get();
    }
    return s;
  }

  Stmt parse_while() {
    Stmt s;
    s.kind = Stmt::Kind::While;
    s.line = peek().line;
    get();  // while
    expect(Tok::K::LParen, "'('");
    s.value = parse_expr();
    expect(Tok::K::RParen, "')'");
    expect(Tok::K::LBrace, "'{'");
    while (peek().k != Tok::K::RBrace) s.body.push_back(parse_stmt());
    get();
    return s;
  }

  Stmt parse_reg_stmt() {
    const Tok reg = get();
    if (reserved_words().count(reg.text) != 0) {
      fail("'" + reg.text + "' is a reserved word", reg);
    }
    if (prog_.location_index(reg.text) >= 0) {
      fail("assignment target '" + reg.text +
               "' is a location; use *" + reg.text + " for a plain store",
           reg);
    }
    Stmt s;
    s.line = reg.line;
    s.reg = reg.text;
    expect(Tok::K::Assign, "'='");
    const Tok rhs = peek();
    if (rhs.k == Tok::K::Star) {
      get();
      s.kind = Stmt::Kind::LoadNa;
      const Tok loc = expect(Tok::K::Ident, "location name");
      location_of(loc, false, "plain load");
      s.loc = loc.text;
      expect(Tok::K::Semi, "';'");
      return s;
    }
    if (rhs.k == Tok::K::Ident &&
        (rhs.text == "load" || rhs.text == "fetch_inc")) {
      const bool is_load = rhs.text == "load";
      get();
      s.kind = is_load ? Stmt::Kind::Load : Stmt::Kind::FetchInc;
      expect(Tok::K::LParen, "'('");
      const Tok loc = expect(Tok::K::Ident, "location name");
      location_of(loc, true, is_load ? "load" : "fetch_inc");
      s.loc = loc.text;
      if (is_load) {
        finish_atomic_args(
            s, {MemoryOrder::RLX, MemoryOrder::ACQ, MemoryOrder::SC},
            "load");
      } else {
        finish_atomic_args(s,
                           {MemoryOrder::RLX, MemoryOrder::ACQ,
                            MemoryOrder::REL, MemoryOrder::AR,
                            MemoryOrder::SC},
                           "fetch_inc");
      }
      expect(Tok::K::Semi, "';'");
      return s;
    }
    s.kind = Stmt::Kind::Assign;
    s.value = parse_expr();
    expect(Tok::K::Semi, "';'");
    return s;
  }

  // --- expressions ---

  Expr parse_expr() { return parse_cond(); }

  Expr parse_cond() {
    Expr c = parse_cmp();
    if (peek().k == Tok::K::Question) {
      get();
      Expr t = parse_expr();
      expect(Tok::K::Colon, "':'");
      Expr f = parse_cond();
      Expr e;
      e.kind = Expr::Kind::Cond;
      e.kids = {std::move(c), std::move(t), std::move(f)};
      return e;
    }
    return c;
  }

  Expr parse_cmp() {
    Expr l = parse_add();
    const Tok t = peek();
    if (t.k == Tok::K::EqEq || t.k == Tok::K::NeEq) {
      get();
      Expr r = parse_add();
      if (peek().k == Tok::K::EqEq || peek().k == Tok::K::NeEq) {
        fail("chained comparisons are not supported", peek());
      }
      Expr e;
      e.kind = t.k == Tok::K::EqEq ? Expr::Kind::Eq : Expr::Kind::Ne;
      e.kids = {std::move(l), std::move(r)};
      return e;
    }
    return l;
  }

  Expr parse_add() {
    Expr l = parse_unary();
    while (peek().k == Tok::K::Plus || peek().k == Tok::K::Minus) {
      const Tok t = get();
      Expr r = parse_unary();
      Expr e;
      e.kind = t.k == Tok::K::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      e.kids = {std::move(l), std::move(r)};
      l = std::move(e);
    }
    return l;
  }

  Expr parse_unary() {
    if (peek().k == Tok::K::Minus) {
      get();
      Expr zero;
      zero.kind = Expr::Kind::Lit;
      zero.lit = 0;
      Expr e;
      e.kind = Expr::Kind::Sub;
      e.kids = {std::move(zero), parse_unary()};
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Tok t = get();
    if (t.k == Tok::K::Int) {
      Expr e;
      e.kind = Expr::Kind::Lit;
      e.lit = t.num;
      return e;
    }
    if (t.k == Tok::K::LParen) {
      Expr e = parse_expr();
      expect(Tok::K::RParen, "')'");
      return e;
    }
    if (t.k == Tok::K::Ident) {
      if (reserved_words().count(t.text) != 0) {
        fail("'" + t.text + "' is a reserved word", t);
      }
      if (prog_.location_index(t.text) >= 0) {
        fail("'" + t.text +
                 "' is a location; load it into a register first",
             t);
      }
      Expr e;
      e.kind = Expr::Kind::Reg;
      e.reg = t.text;
      return e;
    }
    fail("expected an expression", t);
  }

  // --- query ---

  void collect_assigned(const std::vector<Stmt>& body,
                        std::set<std::string>& regs) const {
    for (const Stmt& s : body) {
      if (!s.reg.empty()) regs.insert(s.reg);
      collect_assigned(s.body, regs);
      collect_assigned(s.else_body, regs);
    }
  }

  void parse_query() {
    get();  // exists
    expect(Tok::K::LParen, "'('");
    prog_.has_query = true;

    // Which threads assign which registers, in flat order.
    std::vector<std::set<std::string>> assigned;
    for (const auto& dev : prog_.tree) {
      for (const auto& wg : dev) {
        for (const ThreadBlock& tb : wg) {
          assigned.emplace_back();
          collect_assigned(tb.body, assigned.back());
        }
      }
    }

    for (;;) {
      const Tok name = expect(Tok::K::Ident, "a register or location name");
      expect(Tok::K::EqEq, "'=='");
      bool neg = false;
      if (peek().k == Tok::K::Minus) {
        neg = true;
        get();
      }
      const Tok v = expect(Tok::K::Int, "an integer");
      QueryAtom a;
      a.name = name.text;
      a.value = neg ? -v.num : v.num;
      const int l = prog_.location_index(name.text);
      if (l >= 0) {
        // A final value is the modification-order maximum, which only
        // atomic locations have.
        if (!prog_.locations[static_cast<std::size_t>(l)].atomic) {
          fail("location '" + name.text +
                   "' is nonatomic and has no final value; load it into a "
                   "register and query that",
               name);
        }
        a.is_register = false;
        a.location = l;
      } else {
        int found = -1;
        for (std::size_t t = 0; t < assigned.size(); ++t) {
          if (assigned[t].count(name.text) == 0) continue;
          if (found >= 0) {
            fail("register '" + name.text +
                     "' is assigned in more than one thread; the query is "
                     "ambiguous",
                 name);
          }
          found = static_cast<int>(t);
        }
        if (found < 0) {
          fail("query name '" + name.text +
                   "' is neither a location nor an assigned register",
               name);
        }
        a.is_register = true;
        a.flat_thread = found;
      }
      prog_.query.push_back(std::move(a));
      if (peek().k != Tok::K::Conj) break;
      get();
    }
    expect(Tok::K::RParen, "')'");
  }

  // --- static checks ---

  void touched_locations(const std::vector<Stmt>& body,
                         std::set<std::string>& locs) const {
    for (const Stmt& s : body) {
      if (!s.loc.empty()) locs.insert(s.loc);
      touched_locations(s.body, locs);
      touched_locations(s.else_body, locs);
    }
  }

  void check_local_confinement() const {
    if (!prog_.opencl) return;
    std::map<std::string, int> owner;  // location -> flat work-group id
    int wg_id = 0;
    for (const auto& dev : prog_.tree) {
      for (const auto& wg : dev) {
        std::set<std::string> locs;
        for (const ThreadBlock& tb : wg) touched_locations(tb.body, locs);
        for (const std::string& l : locs) {
          const int li = prog_.location_index(l);
          if (li < 0 || prog_.locations[li].region != Region::Local) {
            continue;
          }
          auto [it, fresh] = owner.emplace(l, wg_id);
          if (!fresh && it->second != wg_id) {
            fail("local location '" + l +
                     "' is accessed by more than one work-group",
                 1, 1);
          }
        }
        ++wg_id;
      }
    }
  }

  std::vector<Tok> toks_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
  LitmusProgram prog_;
};

}  // namespace

int LitmusProgram::location_index(const std::string& n) const {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    if (locations[i].name == n) return static_cast<int>(i);
  }
  return -1;
}

int LitmusProgram::flat_thread_count() const {
  int c = 0;
  for (const auto& dev : tree) {
    for (const auto& wg : dev) c += static_cast<int>(wg.size());
  }
  return c;
}

LitmusProgram parse_litmus(const std::string& text,
                           const ParseOptions& options) {
  return Parser(text, options).parse();
}

std::int64_t eval_expr(const Expr& e,
                       const std::map<std::string, std::int64_t>& regs) {
  switch (e.kind) {
    case Expr::Kind::Lit:
      return e.lit;
    case Expr::Kind::Reg: {
      const auto it = regs.find(e.reg);
      return it == regs.end() ? 0 : it->second;
    }
    case Expr::Kind::Eq:
      return eval_expr(e.kids[0], regs) == eval_expr(e.kids[1], regs) ? 1
                                                                      : 0;
    case Expr::Kind::Ne:
      return eval_expr(e.kids[0], regs) != eval_expr(e.kids[1], regs) ? 1
                                                                      : 0;
    case Expr::Kind::Add:
      return eval_expr(e.kids[0], regs) + eval_expr(e.kids[1], regs);
    case Expr::Kind::Sub:
      return eval_expr(e.kids[0], regs) - eval_expr(e.kids[1], regs);
    case Expr::Kind::Cond:
      return eval_expr(e.kids[0], regs) != 0 ? eval_expr(e.kids[1], regs)
                                             : eval_expr(e.kids[2], regs);
  }
  return 0;  // unreachable
}

// ---------------------------------------------------------------------------
// Basic-set enumeration

namespace {

struct ThreadTrace {
  std::vector<Label> events;
  std::map<std::string, std::int64_t> regs;
};

/// Enumerates one thread's (path, read-valuation) pairs under fixed
/// per-location read domains. Paths that would run a while body beyond the
/// unroll bound are discarded and flagged.
class ThreadRunner {
 public:
  ThreadRunner(const LitmusProgram& p, const EnumerateConfig& cfg,
               const std::map<std::string, std::vector<std::int64_t>>& dom)
      : p_(p), cfg_(cfg), dom_(dom) {}

  std::vector<ThreadTrace> run(const ThreadBlock& tb, bool* truncated) {
    out_.clear();
    truncated_ = false;
    exec(tb.body, 0, ThreadTrace{},
         [this](ThreadTrace t) { emit(std::move(t)); });
    if (truncated_) *truncated = true;
    return std::move(out_);
  }

 private:
  using Cont = std::function<void(ThreadTrace)>;

  void emit(ThreadTrace t) {
    if (out_.size() >= cfg_.max_basic) {
      throw ResourceError(
          "basic-execution enumeration exceeded the cap of " +
          std::to_string(cfg_.max_basic) + " (single thread)");
    }
    out_.push_back(std::move(t));
  }

  const std::vector<std::int64_t>& domain(const std::string& loc) const {
    return dom_.at(loc);
  }

  void exec(const std::vector<Stmt>& body, std::size_t i, ThreadTrace cur,
            const Cont& done) {
    if (i == body.size()) {
      done(std::move(cur));
      return;
    }
    const Stmt& s = body[i];
    const auto next = [&](ThreadTrace t) {
      exec(body, i + 1, std::move(t), done);
    };
    switch (s.kind) {
      case Stmt::Kind::Store: {
        const std::int64_t v = eval_expr(s.value, cur.regs);
        cur.events.push_back(
            Label::mk_w(p_.location_index(s.loc), v, s.ord, s.scope));
        next(std::move(cur));
        return;
      }
      case Stmt::Kind::StoreNa: {
        const std::int64_t v = eval_expr(s.value, cur.regs);
        cur.events.push_back(Label::mk_wna(p_.location_index(s.loc), v));
        next(std::move(cur));
        return;
      }
      case Stmt::Kind::Load: {
        for (const std::int64_t v : domain(s.loc)) {
          ThreadTrace t = cur;
          t.events.push_back(
              Label::mk_r(p_.location_index(s.loc), v, s.ord, s.scope));
          t.regs[s.reg] = v;
          next(std::move(t));
        }
        return;
      }
      case Stmt::Kind::LoadNa: {
        for (const std::int64_t v : domain(s.loc)) {
          ThreadTrace t = cur;
          t.events.push_back(Label::mk_rna(p_.location_index(s.loc), v));
          t.regs[s.reg] = v;
          next(std::move(t));
        }
        return;
      }
      case Stmt::Kind::FetchInc: {
        for (const std::int64_t v : domain(s.loc)) {
          ThreadTrace t = cur;
          t.events.push_back(Label::mk_rmw(p_.location_index(s.loc), v,
                                           v + 1, s.ord, s.scope));
          t.regs[s.reg] = v;
          next(std::move(t));
        }
        return;
      }
      case Stmt::Kind::Fence: {
        Label l;
        if (!p_.opencl) {
          l = Label::mk_f(s.ord);
        } else if (s.fence_global && s.fence_local) {
          l = Label::mk_fgl(s.ord, *s.scope);
        } else if (s.fence_global) {
          l = Label::mk_fg(s.ord, *s.scope);
        } else {
          l = Label::mk_fl(s.ord, *s.scope);
        }
        cur.events.push_back(l);
        next(std::move(cur));
        return;
      }
      case Stmt::Kind::Assign: {
        cur.regs[s.reg] = eval_expr(s.value, cur.regs);
        next(std::move(cur));
        return;
      }
      case Stmt::Kind::If: {
        const std::vector<Stmt>& branch =
            eval_expr(s.value, cur.regs) != 0 ? s.body : s.else_body;
        exec(branch, 0, std::move(cur),
             [&](ThreadTrace t) { next(std::move(t)); });
        return;
      }
      case Stmt::Kind::While: {
        // Each dynamic encounter of the loop gets a fresh unroll budget.
        const std::function<void(ThreadTrace, unsigned)> iterate =
            [&](ThreadTrace t, unsigned budget) {
              if (eval_expr(s.value, t.regs) == 0) {
                next(std::move(t));
                return;
              }
              if (budget == 0) {
                truncated_ = true;  // path discarded
                return;
              }
              exec(s.body, 0, std::move(t), [&](ThreadTrace t2) {
                iterate(std::move(t2), budget - 1);
              });
            };
        iterate(std::move(cur), cfg_.unroll);
        return;
      }
    }
  }

  const LitmusProgram& p_;
  const EnumerateConfig& cfg_;
  const std::map<std::string, std::vector<std::int64_t>>& dom_;
  std::vector<ThreadTrace> out_;
  bool truncated_ = false;
};

/// Statically seeds read domains: stored integer literals, and for k
/// fetch_inc statements on a location (while bodies counted unroll times)
/// the values init+1 .. init+k. Also counts write statements per unrolled
/// path (saturated), which bounds the domain fixpoint below: a value chain
/// in any single execution cannot be longer than its number of writes.
void seed_domains(const std::vector<Stmt>& body, std::uint64_t mult,
                  unsigned unroll,
                  std::map<std::string, std::set<std::int64_t>>* dom,
                  std::map<std::string, std::uint64_t>* fetch_incs,
                  std::uint64_t* write_slots) {
  constexpr std::uint64_t kSat = 1u << 12;
  for (const Stmt& s : body) {
    switch (s.kind) {
      case Stmt::Kind::Store:
      case Stmt::Kind::StoreNa:
        if (s.value.kind == Expr::Kind::Lit) (*dom)[s.loc].insert(s.value.lit);
        *write_slots = std::min(*write_slots + mult, kSat);
        break;
      case Stmt::Kind::FetchInc: {
        std::uint64_t& c = (*fetch_incs)[s.loc];
        c = std::min(c + mult, kSat);
        *write_slots = std::min(*write_slots + mult, kSat);
        break;
      }
      case Stmt::Kind::If:
        seed_domains(s.body, mult, unroll, dom, fetch_incs, write_slots);
        seed_domains(s.else_body, mult, unroll, dom, fetch_incs,
                     write_slots);
        break;
      case Stmt::Kind::While:
        seed_domains(s.body, std::min(mult * std::max(unroll, 1u), kSat),
                     unroll, dom, fetch_incs, write_slots);
        break;
      default:
        break;
    }
  }
}

std::vector<const ThreadBlock*> flat_threads(const LitmusProgram& p,
                                             std::vector<ThreadPath>* paths) {
  std::vector<const ThreadBlock*> out;
  for (std::size_t d = 0; d < p.tree.size(); ++d) {
    for (std::size_t w = 0; w < p.tree[d].size(); ++w) {
      for (std::size_t t = 0; t < p.tree[d][w].size(); ++t) {
        out.push_back(&p.tree[d][w][t]);
        if (paths != nullptr) {
          paths->push_back({static_cast<int>(d), static_cast<int>(w),
                            static_cast<int>(t)});
        }
      }
    }
  }
  return out;
}

}  // namespace

BasicSet enumerate_basic(const LitmusProgram& p, const EnumerateConfig& cfg) {
  BasicSet result;
  const std::vector<const ThreadBlock*> threads =
      flat_threads(p, &result.thread_paths);

  // --- read-value domains: static seed, then fixpoint over stored values.
  std::map<std::string, std::set<std::int64_t>> dom;
  std::map<std::string, std::uint64_t> fetch_incs;
  std::uint64_t write_slots = 0;
  for (std::size_t l = 0; l < p.locations.size(); ++l) {
    dom[p.locations[l].name].insert(p.initial[l]);
  }
  for (const ThreadBlock* tb : threads) {
    seed_domains(tb->body, 1, cfg.unroll, &dom, &fetch_incs, &write_slots);
  }
  for (const auto& [loc, count] : fetch_incs) {
    const std::int64_t base = p.initial[p.location_index(loc)];
    for (std::uint64_t k = 1; k <= count; ++k) {
      dom[loc].insert(base + static_cast<std::int64_t>(k));
    }
  }
  std::set<std::string> overridden;
  if (cfg.value_domain_override.has_value()) {
    for (const auto& [loc, values] : *cfg.value_domain_override) {
      if (p.location_index(loc) < 0) {
        throw StructuralError("value-domain override for undeclared "
                              "location '" + loc + "'");
      }
      dom[loc] = std::set<std::int64_t>(values.begin(), values.end());
      overridden.insert(loc);
    }
  }

  auto frozen = [&] {
    std::map<std::string, std::vector<std::int64_t>> f;
    for (const auto& [loc, values] : dom) {
      f.emplace(loc, std::vector<std::int64_t>(values.begin(), values.end()));
    }
    return f;
  };

  // Fixpoint over values any path stores, bounded by the static write-slot
  // count: a value produced in a single execution flows through at most
  // write_slots writes, so that many rounds already cover every value a
  // consistent candidate can read. Stopping there keeps fetch_inc chains
  // (which grow the domain every round) finite; the possible
  // over-approximation only adds read guesses that no write matches, and
  // witness enumeration discards those.
  for (std::uint64_t round = 0; round <= write_slots; ++round) {
    const auto d = frozen();
    ThreadRunner runner(p, cfg, d);
    bool ignore = false;
    bool grew = false;
    for (const ThreadBlock* tb : threads) {
      for (const ThreadTrace& tr : runner.run(*tb, &ignore)) {
        for (const Label& e : tr.events) {
          if (!e.is_write()) continue;
          const std::string& loc = p.locations[e.loc].name;
          if (overridden.count(loc) != 0) continue;
          grew |= dom.at(loc).insert(*e.wval).second;
        }
      }
    }
    if (!grew) break;
  }
  result.domains = frozen();

  std::vector<std::vector<ThreadTrace>> traces(threads.size());
  bool truncated = false;
  {
    ThreadRunner runner(p, cfg, result.domains);
    for (std::size_t t = 0; t < threads.size(); ++t) {
      traces[t] = runner.run(*threads[t], &truncated);
    }
  }
  result.truncated = truncated;

  // --- cross product of per-thread traces.
  std::uint64_t total = threads.empty() ? 0 : 1;
  for (const auto& ts : traces) {
    if (ts.empty()) {
      total = 0;
      break;
    }
    if (total > cfg.max_basic / ts.size() + 1) {
      throw ResourceError("basic-execution enumeration exceeded the cap of " +
                          std::to_string(cfg.max_basic));
    }
    total *= ts.size();
  }
  if (total > cfg.max_basic) {
    throw ResourceError("basic-execution enumeration exceeded the cap of " +
                        std::to_string(cfg.max_basic));
  }

  if (total == 0) return result;
  std::vector<std::size_t> idx(threads.size(), 0);
  for (;;) {
    ExecutionBuilder b(p.locations, p.opencl);
    for (std::size_t l = 0; l < p.locations.size(); ++l) {
      b.init(p.locations[l].name, p.initial[l]);
    }
    int cur_dev = -1, cur_wg = -1;
    BasicExecution bx;
    for (std::size_t t = 0; t < threads.size(); ++t) {
      const ThreadPath& tp = result.thread_paths[t];
      if (p.opencl) {
        if (tp.device != cur_dev) {
          b.begin_device();
          cur_dev = tp.device;
          cur_wg = -1;
        }
        if (tp.workgroup != cur_wg) {
          b.begin_workgroup();
          cur_wg = tp.workgroup;
        }
      }
      b.begin_thread();
      const ThreadTrace& tr = traces[t][idx[t]];
      for (const Label& e : tr.events) b.push(e);
      bx.registers.push_back(tr.regs);
    }
    bx.x = b.build();
    const std::string problem = validate_execution(bx.x);
    if (!problem.empty()) {
      throw StructuralError("enumerated execution is invalid: " + problem);
    }
    result.executions.push_back(std::move(bx));

    // Odometer: last thread varies fastest.
    std::size_t k = threads.size();
    while (k > 0) {
      --k;
      if (++idx[k] < traces[k].size()) break;
      idx[k] = 0;
      if (k == 0) return result;
    }
  }
}

}  // namespace axmm::frontend
