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
//
// A small model-definition language for axiomatic memory models. A model is
// a sequence of statements, one per line ('#' starts a comment):
//
//   let NAME = EXPR
//   acyclic EXPR as NAME
//   irreflexive EXPR as NAME
//   empty EXPR as NAME
//   undefined_unless empty EXPR as NAME
//   witness NAME linear over EXPR
//
// Expressions combine the named sets and relations of the base environment:
//
//   EXPR ::= ident | [EXPR] | EXPR^-1 | EXPR? | EXPR+ | ~EXPR
//          | EXPR ; EXPR | EXPR & EXPR | EXPR \ EXPR | EXPR | EXPR
//          | EXPR * EXPR | (EXPR)
//
// [s] is the identity restricted to set s; s1*s2 the full rectangle between
// two sets; ^-1 inverse; ? reflexive closure; + transitive closure; ~ the
// complement of a relation within the full square. Precedence, tightest
// first: postfix operators, then ';' and '*', then '&', then '\', then '|';
// '~' binds to the following postfix expression. Sequencing and difference
// associate to the left.
//
// Sorts (set vs relation) are checked statically: '~', '^-1', '?', '+' and
// ';' apply to relations, '[ ]' and '*' to sets, and '&', '\', '|' to two
// operands of one sort. 'empty' accepts either sort; 'acyclic' and
// 'irreflexive' demand relations.
//
// A witness statement declares a relation that is not derived but
// enumerated: the checker tries every strict total order over the named
// set. Statements after the declaration can reference the declared name.

#ifndef AXMM_CATDSL_HPP
#define AXMM_CATDSL_HPP

#include <memory>
#include <string>
#include <vector>

#include "axmm/events.hpp"

namespace axmm::cat {

enum class ExprOp {
  Ident,       // name
  Bracket,     // [a]
  Inverse,     // a^-1
  Maybe,       // a?
  Plus,        // a+
  Complement,  // ~a
  Seq,         // a ; b
  And,         // a & b
  Diff,        // a \ b
  Or,          // a | b
  Prod,        // a * b
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  ExprOp op = ExprOp::Ident;
  std::string name;  // Ident only
  ExprPtr a, b;      // unary: a; binary: a, b
  int line = 0, col = 0;
};

enum class Pred { Acyclic, Irreflexive, Empty };

/// One axiom: a predicate over an expression, with a mandatory name so
/// verdicts stay attributable. Undefined-behaviour constraints do not bear
/// on consistency; a consistent candidate violating one is faulty.
struct Constraint {
  bool undefined_behaviour = false;
  Pred pred = Pred::Acyclic;
  ExprPtr expr;
  std::string name;
};

struct WitnessDecl {
  std::string name;
  ExprPtr over;  // a set expression
};

/// A parsed model: ordered bindings, then constraints, plus any witness
/// declarations. Immutable after parse.
struct ModelDef {
  std::string name;  // assigned by the caller; empty after a bare parse
  std::vector<std::pair<std::string, ExprPtr>> bindings;
  std::vector<Constraint> constraints;
  std::vector<WitnessDecl> witness_decls;

  bool needs_witness() const { return !witness_decls.empty(); }
};

/// Parses a model text. Statement forms and expression sorts are checked
/// here: unknown identifiers, a binding referencing itself, and sort
/// mismatches all throw ParseError carrying line and column. Known names are
/// those of the base environment, earlier bindings, and earlier witness
/// declarations.
ModelDef parse_model(const std::string& text);

/// Evaluates one expression in an environment. Unbound names and sort
/// mismatches throw EvalError (they indicate a model evaluated against an
/// environment it was not checked for).
Value eval_expr(const Expr& e, const Env& env);

/// Extends an environment with a model's bindings, evaluated in order.
/// Later bindings see earlier ones; rebinding a name shadows it.
Env eval_bindings(const ModelDef& m, Env env);

/// Whether one constraint's predicate holds of its expression in env. The
/// environment must already contain every name the expression uses,
/// bindings included.
bool constraint_holds(const Constraint& c, const Env& env);

struct Verdict {
  bool consistent = false;
  bool faulty = false;
  /// Failed consistency axioms when inconsistent; violated
  /// undefined-behaviour axioms when consistent and faulty.
  std::vector<std::string> failed_axioms;
};

/// Judges one candidate. Precondition: wf_candidate(x, w, m.needs_witness())
/// holds; evaluation itself does not re-check it. All consistency
/// constraints are evaluated (no short-circuit), so failed_axioms is
/// complete; undefined-behaviour constraints are evaluated only for
/// consistent candidates, per the definition of faultiness.
Verdict eval_model(const ModelDef& m, const Execution& x, const Witness& w);

/// As eval_model, but from a prebuilt environment (execution_env plus
/// bind_witness). Lets witness enumerators reuse the execution part.
Verdict eval_model_env(const ModelDef& m, const Env& base);

}  // namespace axmm::cat

#endif  // AXMM_CATDSL_HPP
