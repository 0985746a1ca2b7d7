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

#ifndef AXMM_FRONTEND_HPP_
#define AXMM_FRONTEND_HPP_

/// Litmus-test frontend: a parser for a small concurrent language and the
/// enumeration of its basic executions.
///
/// Grammar (UTF-8 text, '#' and '//' start line comments):
///
///   test NAME (c11|opencl)
///   decls:  [global|local|global_fgb] [atomic] int NAME [= INT];
///           (region mandatory for opencl tests, forbidden for c11)
///   body:   thread blocks `{ stmt* }`; `||` separates threads, `|||`
///           work-groups, `||||` devices (the latter two opencl-only)
///   stmts:  store(LOC, expr [, ord [, scope]]);
///           REG = load(LOC [, ord [, scope]]);
///           REG = fetch_inc(LOC [, ord [, scope]]);
///           fence([G|L|GL,] ord [, scope]);      (region set opencl-only)
///           *LOC = expr;                          (plain, non-atomic store)
///           REG = *LOC;                           (plain, non-atomic load)
///           REG = expr;
///           if (expr) { stmt* } [else { stmt* }]
///           while (expr) { stmt* }
///   query:  exists (NAME == INT /\ NAME == INT ...)   (optional trailer)
///
/// Orders: rlx acq rel ar sc (default sc); stores take rlx|rel|sc, loads
/// rlx|acq|sc, fetch_inc any, fences acq|rel|ar|sc. The consume order is
/// recognised and explicitly rejected. Scopes: wi wg dv all (default dv),
/// opencl-only. Atomic operations require an atomic location; `*` accesses
/// are plain and work on any location. Expressions combine integer
/// literals and registers with + - == != and ?: .

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "axmm/events.hpp"

namespace axmm::frontend {

/// An integer expression over thread-local registers. Registers read before
/// any assignment evaluate to 0.
struct Expr {
  enum class Kind : std::uint8_t { Lit, Reg, Eq, Ne, Add, Sub, Cond };
  Kind kind = Kind::Lit;
  std::int64_t lit = 0;
  std::string reg;
  std::vector<Expr> kids;  // Eq/Ne/Add/Sub: two; Cond: three.
};

std::int64_t eval_expr(const Expr& e,
                       const std::map<std::string, std::int64_t>& regs);

struct Stmt {
  enum class Kind : std::uint8_t {
    Store,     // store(loc, value, ord, scope)
    Load,      // reg = load(loc, ord, scope)
    FetchInc,  // reg = fetch_inc(loc, ord, scope)
    Fence,     // fence(regions, ord, scope)
    StoreNa,   // *loc = value
    LoadNa,    // reg = *loc
    Assign,    // reg = value
    If,        // if (value) body else else_body
    While,     // while (value) body
  };
  Kind kind = Kind::Assign;
  int line = 0;
  std::string loc;
  std::string reg;
  Expr value;  // stored value, assigned expression, or branch condition
  MemoryOrder ord = MemoryOrder::SC;
  std::optional<Scope> scope;  // present exactly in opencl tests
  bool fence_global = false;   // Fence: G in the region set
  bool fence_local = false;    // Fence: L in the region set
  std::vector<Stmt> body;      // If: then-branch; While: loop body
  std::vector<Stmt> else_body;
};

struct ThreadBlock {
  std::vector<Stmt> body;
};

/// One conjunct of the final-state query: either a register (resolved to
/// the unique thread that assigns it) or an atomic location, compared for
/// equality against an integer. Nonatomic locations are rejected at parse
/// time: they have no modification order, hence no final value.
struct QueryAtom {
  std::string name;
  std::int64_t value = 0;
  bool is_register = false;
  int flat_thread = -1;  // registers: index in tree order
  int location = -1;     // locations: index into LitmusProgram::locations
};

struct LitmusProgram {
  std::string name;
  bool opencl = false;
  std::vector<Location> locations;
  std::vector<std::int64_t> initial;  // parallel to locations
  // Device list -> work-group list -> thread list. C11 programs always have
  // exactly one device and one work-group.
  std::vector<std::vector<std::vector<ThreadBlock>>> tree;
  bool has_query = false;
  std::vector<QueryAtom> query;

  int location_index(const std::string& name) const;
  int flat_thread_count() const;
};

/// Parser switches. The work-item scope 'wi' names an atomic whose scope
/// includes nobody else; it exists to probe what the axioms say when scope
/// inclusion never fires, and real kernels have no use for it, so the token
/// is rejected unless a caller opts in.
struct ParseOptions {
  bool allow_wi = false;
};

/// Parses a litmus test. Throws ParseError (with line/column) on syntax
/// errors, undeclared or reserved identifiers, atomic operations on
/// non-atomic locations, order/kind mismatches (a store with ord=acq, the
/// consume order anywhere), scope or region annotations in c11 tests,
/// missing regions in opencl tests, work-group or device separators in c11
/// tests, the 'wi' scope unless opted in, local-region locations touched by
/// more than one work-group, and query registers that no thread assigns or
/// several threads assign.
LitmusProgram parse_litmus(const std::string& text,
                           const ParseOptions& options = {});

/// Tree position of a flat thread index.
struct ThreadPath {
  int device = 0;
  int workgroup = 0;
  int thread = 0;

  bool operator==(const ThreadPath&) const = default;
};

struct EnumerateConfig {
  /// Maximum number of times a while body runs on one path; paths that
  /// would iterate further are discarded and the result is marked
  /// truncated, so verdicts derived from it are lower bounds.
  unsigned unroll = 2;
  /// Cap on the total number of basic executions (and on per-thread path
  /// counts during enumeration). Exceeding it raises ResourceError.
  std::uint64_t max_basic = 1000000;
  /// Per-location replacement for the computed read-value domain.
  std::optional<std::map<std::string, std::vector<std::int64_t>>>
      value_domain_override;
};

/// One basic execution plus the final register file of every thread on the
/// path/valuation that produced it.
struct BasicExecution {
  Execution x;
  std::vector<std::map<std::string, std::int64_t>> registers;  // per thread
};

struct BasicSet {
  std::vector<ThreadPath> thread_paths;  // flat thread index -> position
  std::vector<BasicExecution> executions;
  bool truncated = false;
  /// The read-value domain used per location, sorted ascending. Reads of a
  /// location guess exactly these values.
  std::map<std::string, std::vector<std::int64_t>> domains;
};

/// Enumerates the basic set: one execution per control-flow path and
/// read-value assignment, read values ranging over each location's value
/// domain. The domain collects the initializer, every value some path
/// stores to the location, and init..init+k for k fetch_inc statements on
/// it, iterated to a fixpoint that is cut off after as many rounds as the
/// program has write statements (value chains in one execution cannot be
/// longer, so every value a consistent candidate can read is covered; the
/// cutoff may over-approximate, and reads guessing an unwritten value
/// simply find no witness). Basic sets beyond cfg.max_basic raise
/// ResourceError.
///
/// Event ids: initial writes first in declaration order, then threads in
/// tree order, each thread's events in program order. Identical inputs
/// yield identical output, including order.
BasicSet enumerate_basic(const LitmusProgram& p,
                         const EnumerateConfig& cfg = {});

}  // namespace axmm::frontend

#endif  // AXMM_FRONTEND_HPP_
