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

#include "axmm/checker.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <optional>
#include <set>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "axmm/errors.hpp"

namespace axmm::checker {
namespace {

// ---------------------------------------------------------------------------
// Witness space

/// The raw material of witness enumeration, extracted once per execution.
struct WitnessSpace {
  std::vector<EventId> reads;                 // identifier order
  std::vector<std::vector<EventId>> sources;  // per read, identifier order
  std::vector<std::vector<EventId>> groups;   // atomic-location writes
  std::vector<EventId> sc;                    // identifier order
};

WitnessSpace witness_space(const Execution& x) {
  WitnessSpace sp;
  const std::uint32_t n = x.n;
  for (std::uint32_t e = 0; e < n; ++e) {
    const Label& l = x.lbl[e];
    if (l.is_read()) {
      sp.reads.push_back(e);
      auto& src = sp.sources.emplace_back();
      // Mirror of the well-formedness condition on rf: a write at the same
      // location whose written value is the value read.
      for (std::uint32_t w = 0; w < n; ++w) {
        const Label& lw = x.lbl[w];
        if (lw.is_write() && lw.loc == l.loc && lw.wval && l.rval &&
            *lw.wval == *l.rval) {
          src.push_back(w);
        }
      }
    }
    if (l.is_atomic() && l.ord == MemoryOrder::SC) sp.sc.push_back(e);
  }
  // One group of writes per atomic-typed location; writes at nonatomic
  // locations join no modification order.
  std::map<std::int32_t, std::vector<EventId>> by_loc;
  for (std::uint32_t e = 0; e < n; ++e) {
    const Label& l = x.lbl[e];
    if (!l.is_write()) continue;
    if (l.loc < 0 || static_cast<std::size_t>(l.loc) >= x.locations.size() ||
        !x.locations[static_cast<std::size_t>(l.loc)].atomic) {
      continue;
    }
    by_loc[l.loc].push_back(e);
  }
  for (auto& [loc, writes] : by_loc) sp.groups.push_back(std::move(writes));
  return sp;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b,
                             std::uint64_t limit) {
  if (a == 0 || b == 0) return 0;
  if (a > limit / b) return limit + 1;
  const std::uint64_t p = a * b;
  return p > limit ? limit + 1 : p;
}

std::uint64_t saturating_factorial(std::uint64_t k, std::uint64_t limit) {
  std::uint64_t f = 1;
  for (std::uint64_t i = 2; i <= k; ++i) f = saturating_mul(f, i, limit);
  return f;
}

std::uint64_t count_pairs(const WitnessSpace& sp, std::uint64_t cap) {
  std::uint64_t c = 1;
  for (const auto& src : sp.sources) c = saturating_mul(c, src.size(), cap);
  for (const auto& g : sp.groups) {
    c = saturating_mul(c, saturating_factorial(g.size(), cap), cap);
  }
  return c;
}

Relation rf_of(const WitnessSpace& sp, std::uint32_t n,
               const std::vector<std::size_t>& idx) {
  Relation rf(n);
  for (std::size_t i = 0; i < sp.reads.size(); ++i) {
    rf.insert(sp.sources[i][idx[i]], sp.reads[i]);
  }
  return rf;
}

Relation mo_of(const std::vector<std::vector<EventId>>& perms,
               std::uint32_t n) {
  Relation mo(n);
  for (const auto& p : perms) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i + 1; j < p.size(); ++j) mo.insert(p[i], p[j]);
    }
  }
  return mo;
}

Relation order_of(const std::vector<EventId>& perm, std::uint32_t n) {
  Relation s(n);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      s.insert(perm[i], perm[j]);
    }
  }
  return s;
}

/// Walks the (rf, mo) pairs in the documented order: rf choices as an
/// odometer with the last read fastest, and within each rf one mo per
/// combination of per-location permutations, last location fastest.
/// Returns false when f stopped the walk.
bool for_each_rf_mo(
    const WitnessSpace& sp, std::uint32_t n,
    const std::function<bool(const Relation&, const Relation&)>& f) {
  for (const auto& src : sp.sources) {
    if (src.empty()) return true;  // a read nothing wrote to: no witness
  }
  std::vector<std::size_t> idx(sp.reads.size(), 0);
  for (;;) {
    const Relation rf = rf_of(sp, n, idx);
    std::vector<std::vector<EventId>> perms = sp.groups;
    for (;;) {
      if (!f(rf, mo_of(perms, n))) return false;
      // Advance the mo odometer, last group fastest.
      bool mo_wrapped = true;
      for (std::size_t g = perms.size(); g-- > 0;) {
        if (std::next_permutation(perms[g].begin(), perms[g].end())) {
          mo_wrapped = false;
          break;
        }
        std::sort(perms[g].begin(), perms[g].end());
      }
      if (mo_wrapped) break;
    }
    // Advance the rf odometer, last read fastest.
    bool rf_wrapped = true;
    for (std::size_t r = idx.size(); r-- > 0;) {
      if (++idx[r] < sp.sources[r].size()) {
        rf_wrapped = false;
        break;
      }
      idx[r] = 0;
    }
    if (rf_wrapped) return true;
  }
}

// ---------------------------------------------------------------------------
// S-axiom classification

bool mentions(const cat::ExprPtr& e, const std::string& name) {
  if (!e) return false;
  if (e->op == cat::ExprOp::Ident) return e->name == name;
  return mentions(e->a, name) || mentions(e->b, name);
}

void flatten_seq(const cat::ExprPtr& e, std::vector<cat::ExprPtr>& out) {
  if (e->op == cat::ExprOp::Seq) {
    flatten_seq(e->a, out);
    flatten_seq(e->b, out);
  } else {
    out.push_back(e);
  }
}

/// A compiled prefix test for one S axiom. Writing S by inserting SC events
/// one at a time at the end of a growing prefix, every S edge (q, e) is
/// created exactly when e is appended, with q already placed. For
///
///   irreflexive S ; tail          (plain)
///
/// the axiom fails exactly when some created edge (q, e) closes a cycle
/// with tail(e, q), so e is inadmissible after a prefix containing such a
/// q. For
///
///   irreflexive (S \ (guard ; S)) ; tail          (guarded)
///
/// the edge (q, e) only counts when no already-placed m has guard(q, m):
/// S(m, e) holds for precisely the placed events, and no later insertion
/// can sit between q and e, so the guard's truth is settled the moment e is
/// appended. Both tests are exact, not approximations: a completed order
/// violates the axiom if and only if some insertion step tripped the test.
struct SAxiomPlan {
  bool guarded = false;
  std::vector<cat::ExprPtr> tail;   // factors after the leading S factor
  std::vector<cat::ExprPtr> guard;  // factors of the guard chain
};

std::optional<SAxiomPlan> classify_s_axiom(const cat::Constraint& c,
                                           const std::string& wname) {
  if (c.undefined_behaviour || c.pred != cat::Pred::Irreflexive) {
    return std::nullopt;
  }
  std::vector<cat::ExprPtr> factors;
  flatten_seq(c.expr, factors);
  for (std::size_t i = 1; i < factors.size(); ++i) {
    if (mentions(factors[i], wname)) return std::nullopt;
  }
  SAxiomPlan plan;
  plan.tail.assign(factors.begin() + 1, factors.end());
  const cat::ExprPtr& head = factors.front();
  if (head->op == cat::ExprOp::Ident && head->name == wname) {
    return plan;
  }
  if (head->op == cat::ExprOp::Diff && head->a &&
      head->a->op == cat::ExprOp::Ident && head->a->name == wname) {
    std::vector<cat::ExprPtr> g;
    flatten_seq(head->b, g);
    if (g.size() < 2) return std::nullopt;
    if (g.back()->op != cat::ExprOp::Ident || g.back()->name != wname) {
      return std::nullopt;
    }
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
      if (mentions(g[i], wname)) return std::nullopt;
    }
    plan.guarded = true;
    plan.guard.assign(g.begin(), g.end() - 1);
    return plan;
  }
  return std::nullopt;
}

/// Evaluates a factor chain to one relation; an empty chain is the
/// identity, which makes "irreflexive S" alone an always-passing test over
/// a strict order.
Relation compose_factors(const std::vector<cat::ExprPtr>& factors,
                         const Env& env, std::uint32_t n) {
  if (factors.empty()) return Relation::identity(n);
  std::optional<Relation> acc;
  for (const cat::ExprPtr& f : factors) {
    Value v = cat::eval_expr(*f, env);
    const Relation* r = std::get_if<Relation>(&v);
    if (!r) {
      throw StructuralError(
          "S axiom factor evaluates to a set; the model was not checked "
          "for this environment");
    }
    acc = acc ? acc->compose(*r) : *r;
  }
  return *acc;
}

struct CompiledPlan {
  bool guarded = false;
  Relation tail;
  Relation guard;
};

/// Depth-first insertion of the SC events, earliest admissible identifier
/// first, stopping at the first complete order. The result is therefore
/// the lexicographically least admissible permutation, which keeps reports
/// and statistics deterministic.
class PrunedSearch {
 public:
  PrunedSearch(const std::vector<EventId>& sc,
               const std::vector<CompiledPlan>& plans, std::uint32_t n)
      : sc_(sc), plans_(plans), n_(n) {}

  std::optional<Relation> first_admissible() {
    prefix_.clear();
    used_.assign(sc_.size(), false);
    if (!place_next()) return std::nullopt;
    return order_of(prefix_, n_);
  }

 private:
  bool place_next() {
    if (prefix_.size() == sc_.size()) return true;
    for (std::size_t i = 0; i < sc_.size(); ++i) {
      if (used_[i]) continue;
      const EventId e = sc_[i];
      if (!admissible(e)) continue;
      used_[i] = true;
      prefix_.push_back(e);
      if (place_next()) return true;
      prefix_.pop_back();
      used_[i] = false;
    }
    return false;
  }

  bool admissible(EventId e) const {
    for (const CompiledPlan& p : plans_) {
      for (const EventId q : prefix_) {
        if (!p.tail.contains(e, q)) continue;
        if (!p.guarded) return false;
        bool cut = false;
        for (const EventId m : prefix_) {
          if (p.guard.contains(q, m)) {
            cut = true;
            break;
          }
        }
        if (!cut) return false;
      }
    }
    return true;
  }

  const std::vector<EventId>& sc_;
  const std::vector<CompiledPlan>& plans_;
  std::uint32_t n_;
  std::vector<EventId> prefix_;
  std::vector<bool> used_;
};

// ---------------------------------------------------------------------------
// Candidate scan: one execution, every candidate, consistent ones reported

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

Deadline deadline_from(double max_seconds) {
  if (max_seconds <= 0) return std::nullopt;
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::duration<double>(max_seconds));
}

class CandidateScan {
 public:
  CandidateScan(const Execution& x, const cat::ModelDef& m,
                const CheckConfig& cfg, Deadline deadline = std::nullopt)
      : x_(x), m_(m), cfg_(cfg), deadline_(deadline),
        space_(witness_space(x)) {
    if (m_.needs_witness()) {
      if (m_.witness_decls.size() != 1) {
        throw StructuralError(
            "models with more than one witness order are not supported");
      }
      wname_ = m_.witness_decls.front().name;
      plan_pruned();
    }
  }

  std::uint64_t tested() const { return tested_; }
  std::uint64_t consistent() const { return consistent_; }

  /// Calls report for every consistent candidate, in enumeration order;
  /// under the pruned strategy at most one S per (rf, mo) pair is ever
  /// completed, so each pair reports at most once. Stops when report
  /// returns false.
  void visit(
      const std::function<bool(const Witness&, const cat::Verdict&)>& report) {
    check_budget();
    const Env exec_env = execution_env(x_);
    if (m_.needs_witness()) {
      // The enumerated permutations range over the SC events, the same set
      // well-formedness fixes, so the model's declaration must agree.
      Value over = cat::eval_expr(*m_.witness_decls.front().over, exec_env);
      const EventSet* s = std::get_if<EventSet>(&over);
      EventSet sc(x_.n);
      for (EventId e : space_.sc) sc.insert(e);
      if (!s || *s != sc) {
        throw StructuralError(
            "the witness order must range over exactly the SC events");
      }
    }
    for_each_rf_mo(
        space_, x_.n, [&](const Relation& rf, const Relation& mo) -> bool {
          check_deadline();
          Env env = exec_env;
          env.insert_or_assign("rf", rf);
          env.insert_or_assign("mo", mo);
          if (!m_.needs_witness()) {
            ++tested_;
            cat::Verdict v = cat::eval_model_env(m_, env);
            if (!v.consistent) return true;
            ++consistent_;
            return report(Witness{rf, mo, std::nullopt}, v);
          }
          if (pruned_) return scan_pruned(rf, mo, env, report);
          return scan_raw(rf, mo, env, report);
        });
  }

 private:
  /// Decides whether the pruned strategy applies: every constraint that
  /// mentions the witness must compile to a prefix test, and nothing
  /// evaluated before the order is chosen (bindings, the other
  /// constraints) may mention it.
  void plan_pruned() {
    pruned_ = cfg_.prune;
    for (const auto& [name, expr] : m_.bindings) {
      if (mentions(expr, wname_)) pruned_ = false;
    }
    if (!pruned_) return;
    for (const cat::Constraint& c : m_.constraints) {
      if (!mentions(c.expr, wname_)) {
        if (!c.undefined_behaviour) sfree_.push_back(&c);
        continue;
      }
      std::optional<SAxiomPlan> p = classify_s_axiom(c, wname_);
      if (!p) {
        pruned_ = false;
        sfree_.clear();
        splans_.clear();
        return;
      }
      splans_.push_back(std::move(*p));
    }
  }

  bool scan_pruned(
      const Relation& rf, const Relation& mo, const Env& env,
      const std::function<bool(const Witness&, const cat::Verdict&)>& report) {
    ++tested_;
    Env benv = cat::eval_bindings(m_, env);
    // No order can rescue a candidate that already fails an S-free axiom.
    for (const cat::Constraint* c : sfree_) {
      if (!cat::constraint_holds(*c, benv)) return true;
    }
    std::vector<CompiledPlan> plans;
    plans.reserve(splans_.size());
    for (const SAxiomPlan& p : splans_) {
      CompiledPlan cp;
      cp.guarded = p.guarded;
      cp.tail = compose_factors(p.tail, benv, x_.n);
      if (p.guarded) cp.guard = compose_factors(p.guard, benv, x_.n);
      plans.push_back(std::move(cp));
    }
    PrunedSearch search(space_.sc, plans, x_.n);
    std::optional<Relation> s = search.first_admissible();
    if (!s) return true;
    Witness w{rf, mo, std::move(s)};
    // Redundant on purpose: the ordinary evaluator re-judges the found
    // order, so a pruning defect surfaces as a loud failure instead of a
    // wrong state set.
    cat::Verdict v = cat::eval_model(m_, x_, w);
    if (!v.consistent) {
      throw StructuralError(
          "pruned order search accepted a candidate the model rejects");
    }
    ++consistent_;
    return report(w, v);
  }

  bool scan_raw(
      const Relation& rf, const Relation& mo, const Env& env,
      const std::function<bool(const Witness&, const cat::Verdict&)>& report) {
    std::vector<EventId> perm = space_.sc;
    do {
      check_deadline();
      ++tested_;
      Relation s = order_of(perm, x_.n);
      Env senv = env;
      senv.insert_or_assign(wname_, s);
      cat::Verdict v = cat::eval_model_env(m_, senv);
      if (!v.consistent) continue;
      ++consistent_;
      if (!report(Witness{rf, mo, std::move(s)}, v)) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  }

  void check_deadline() const {
    if (deadline_ && std::chrono::steady_clock::now() > *deadline_) {
      throw ResourceError("the check exceeded its time budget");
    }
  }

  void check_budget() const {
    std::uint64_t planned = count_pairs(space_, cfg_.max_candidates);
    if (m_.needs_witness() && !pruned_) {
      planned = saturating_mul(
          planned, saturating_factorial(space_.sc.size(), cfg_.max_candidates),
          cfg_.max_candidates);
    }
    if (planned > cfg_.max_candidates) {
      throw ResourceError(
          "candidate space exceeds the per-execution budget of " +
          std::to_string(cfg_.max_candidates) + " candidates");
    }
  }

  const Execution& x_;
  const cat::ModelDef& m_;
  const CheckConfig& cfg_;
  Deadline deadline_;
  WitnessSpace space_;
  std::string wname_;
  bool pruned_ = false;
  std::vector<const cat::Constraint*> sfree_;
  std::vector<SAxiomPlan> splans_;
  std::uint64_t tested_ = 0;
  std::uint64_t consistent_ = 0;
};

// ---------------------------------------------------------------------------
// Outcomes

/// Register names used by more than one thread, over every execution of the
/// basic set, so that naming is stable across executions of one program.
std::set<std::string> shared_register_names(const frontend::BasicSet& bs) {
  std::map<std::string, std::set<std::size_t>> threads_using;
  for (const frontend::BasicExecution& bx : bs.executions) {
    for (std::size_t t = 0; t < bx.registers.size(); ++t) {
      for (const auto& [name, value] : bx.registers[t]) {
        threads_using[name].insert(t);
      }
    }
  }
  std::set<std::string> shared;
  for (const auto& [name, users] : threads_using) {
    if (users.size() > 1) shared.insert(name);
  }
  return shared;
}

Outcome make_outcome(const frontend::LitmusProgram& p,
                     const frontend::BasicExecution& bx, const Witness& w,
                     const std::set<std::string>& shared) {
  Outcome o;
  for (std::size_t t = 0; t < bx.registers.size(); ++t) {
    for (const auto& [name, value] : bx.registers[t]) {
      if (shared.count(name)) {
        o.registers["t" + std::to_string(t + 1) + ":" + name] = value;
      } else {
        o.registers[name] = value;
      }
    }
  }
  const std::uint32_t n = bx.x.n;
  for (std::size_t l = 0; l < p.locations.size(); ++l) {
    if (!p.locations[l].atomic) continue;
    // The final value is the modification-order-maximal write's.
    for (std::uint32_t e = 0; e < n; ++e) {
      const Label& le = bx.x.lbl[e];
      if (!le.is_write() || le.loc != static_cast<std::int32_t>(l)) continue;
      bool maximal = true;
      for (std::uint32_t f = 0; f < n && maximal; ++f) {
        if (w.mo.contains(e, f)) maximal = false;
      }
      if (maximal) {
        o.memory[p.locations[l].name] = *le.wval;
        break;
      }
    }
  }
  return o;
}

bool query_satisfied(const frontend::LitmusProgram& p,
                     const frontend::BasicExecution& bx, const Outcome& o) {
  for (const frontend::QueryAtom& a : p.query) {
    if (a.is_register) {
      const auto& regs = bx.registers[static_cast<std::size_t>(a.flat_thread)];
      auto it = regs.find(a.name);
      if (it == regs.end() || it->second != a.value) return false;
    } else {
      auto it = o.memory.find(p.locations[a.location].name);
      if (it == o.memory.end() || it->second != a.value) return false;
    }
  }
  return true;
}

std::string render_outcome(const Outcome& o) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : o.registers) {
    out << (first ? "" : "; ") << name << "=" << value;
    first = false;
  }
  for (const auto& [name, value] : o.memory) {
    out << (first ? "" : "; ") << name << "=" << value;
    first = false;
  }
  return out.str();
}

}  // namespace

std::uint64_t count_witnesses(const Execution& x, bool needs_S,
                              std::uint64_t cap) {
  const WitnessSpace sp = witness_space(x);
  std::uint64_t c = count_pairs(sp, cap);
  if (needs_S) {
    c = saturating_mul(c, saturating_factorial(sp.sc.size(), cap), cap);
  }
  return c;
}

void enumerate_witnesses(const Execution& x, bool needs_S, std::uint64_t cap,
                         const std::function<bool(const Witness&)>& yield) {
  if (count_witnesses(x, needs_S, cap) > cap) {
    throw ResourceError("witness space exceeds the budget of " +
                        std::to_string(cap) + " witnesses");
  }
  const WitnessSpace sp = witness_space(x);
  for_each_rf_mo(sp, x.n, [&](const Relation& rf, const Relation& mo) -> bool {
    if (!needs_S) return yield(Witness{rf, mo, std::nullopt});
    std::vector<EventId> perm = sp.sc;
    do {
      if (!yield(Witness{rf, mo, order_of(perm, x.n)})) return false;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return true;
  });
}

ExecutionJudgment judge_execution(const Execution& x, const cat::ModelDef& m,
                                  const CheckConfig& cfg) {
  ExecutionJudgment j;
  CandidateScan scan(x, m, cfg, deadline_from(cfg.max_seconds));
  scan.visit([&](const Witness&, const cat::Verdict& v) -> bool {
    j.any_consistent = true;
    if (v.faulty) {
      j.any_faulty = true;
      return false;  // both questions answered
    }
    return true;
  });
  j.tested = scan.tested();
  return j;
}

CheckReport allowed(const frontend::LitmusProgram& p, const cat::ModelDef& m,
                    const CheckConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const Deadline deadline = deadline_from(cfg.max_seconds);
  CheckReport rep;
  rep.test_name = p.name;
  rep.model_name = m.name;
  rep.has_query = p.has_query;

  const frontend::BasicSet bs = frontend::enumerate_basic(p, cfg.enumerate);
  rep.truncated = bs.truncated;
  rep.stats.basic_executions = bs.executions.size();
  const std::set<std::string> shared = shared_register_names(bs);

  struct ExecResult {
    std::map<Outcome, std::uint64_t> outcomes;
    bool faulty = false;
    bool query = false;
    std::uint64_t tested = 0;
    std::uint64_t consistent = 0;
    std::exception_ptr error;
  };
  const std::size_t total = bs.executions.size();
  std::vector<ExecResult> results(total);
  std::atomic<bool> stop{false};

  auto run_one = [&](std::size_t i) {
    ExecResult& res = results[i];
    try {
      const frontend::BasicExecution& bx = bs.executions[i];
      CandidateScan scan(bx.x, m, cfg, deadline);
      scan.visit([&](const Witness& w, const cat::Verdict& v) -> bool {
        if (cfg.fast && stop.load(std::memory_order_relaxed)) return false;
        Outcome o = make_outcome(p, bx, w, shared);
        if (p.has_query && !res.query && query_satisfied(p, bx, o)) {
          res.query = true;
        }
        ++res.outcomes[std::move(o)];
        if (v.faulty) {
          res.faulty = true;
          if (cfg.fast) {
            stop.store(true, std::memory_order_relaxed);
            return false;
          }
        }
        return true;
      });
      res.tested = scan.tested();
      res.consistent = scan.consistent();
    } catch (...) {
      res.error = std::current_exception();
    }
  };

  const unsigned workers =
      std::min<std::uint64_t>(std::max(1u, cfg.workers), total ? total : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) {
      if (cfg.fast && stop.load(std::memory_order_relaxed)) break;
      run_one(i);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          if (cfg.fast && stop.load(std::memory_order_relaxed)) return;
          const std::size_t i = next.fetch_add(1);
          if (i >= total) return;
          run_one(i);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  // Merge in execution order; each execution's contribution is independent
  // of scheduling, so the report is identical for any worker count.
  for (std::size_t i = 0; i < total; ++i) {
    if (results[i].error) std::rethrow_exception(results[i].error);
    for (const auto& [o, count] : results[i].outcomes) {
      rep.outcomes[o] += count;
    }
    if (results[i].faulty) rep.undefined = true;
    if (results[i].query) rep.query_witnessed = true;
    rep.stats.candidates_tested += results[i].tested;
    rep.stats.candidates_consistent += results[i].consistent;
  }
  rep.stats.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

std::string render_text_report(const CheckReport& r) {
  std::ostringstream out;
  out << "Test " << r.test_name << " model=" << r.model_name << "\n";
  out << "Undefined: " << (r.undefined ? "yes" : "no") << "\n";
  out << "States " << r.outcomes.size() << "\n";
  std::vector<std::string> lines;
  lines.reserve(r.outcomes.size());
  for (const auto& [o, count] : r.outcomes) lines.push_back(render_outcome(o));
  std::sort(lines.begin(), lines.end());
  for (const std::string& l : lines) out << l << "\n";
  if (r.has_query) {
    out << "Query: " << (r.query_witnessed ? "witnessed" : "not-witnessed")
        << "\n";
  }
  if (r.truncated) out << "Truncated: yes\n";
  return out.str();
}

}  // namespace axmm::checker
