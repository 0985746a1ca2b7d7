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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "axmm/catdsl.hpp"
#include "axmm/checker.hpp"
#include "axmm/errors.hpp"
#include "axmm/events.hpp"
#include "axmm/frontend.hpp"
#include "axmm/golden.hpp"
#include "axmm/models.hpp"

using namespace axmm;

namespace {

using O = MemoryOrder;

std::string show(const Witness& w) {
  std::ostringstream out;
  out << "rf";
  for (auto [a, b] : w.rf.pairs()) out << " " << a << ">" << b;
  out << " mo";
  for (auto [a, b] : w.mo.pairs()) out << " " << a << ">" << b;
  if (w.S) {
    out << " S";
    for (auto [a, b] : w.S->pairs()) out << " " << a << ">" << b;
  }
  return out.str();
}

checker::CheckReport run(const std::string& src, const std::string& model,
                         checker::CheckConfig cfg = {},
                         models::ModelOptions opts = {}) {
  frontend::LitmusProgram p = frontend::parse_litmus(src);
  cat::ModelDef m = models::get_model(model, opts);
  return checker::allowed(p, m, cfg);
}

/// The classic store-buffering pattern: thread i raises the next thread's
/// flag, then reads its own.
std::string sb_src(int n, bool with_query) {
  std::ostringstream out;
  out << "test sb" << n << " c11\n";
  for (int i = 1; i <= n; ++i) out << "atomic int x" << i << " = 0;\n";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) out << " || ";
    out << "{ store(x" << (i % n) + 1 << ", 1); r" << i << " = load(x" << i
        << "); }";
  }
  out << "\n";
  if (with_query) {
    out << "exists (";
    for (int i = 1; i <= n; ++i) {
      if (i > 1) out << " /\\ ";
      out << "r" << i << " == 0";
    }
    out << ")\n";
  }
  return out.str();
}

/// A read with two possible sources (the initial write and a same-value
/// store), two two-write modification orders, and an optional second
/// seq_cst event so the witness order has something to permute.
Execution two_source_exec(bool second_sc) {
  ExecutionBuilder b({{"x", true, Region::C11}, {"y", true, Region::C11}},
                     false);
  const auto x = b.loc_index("x");
  const auto y = b.loc_index("y");
  b.init("x", 0);                                            // 0
  b.init("y", 0);                                            // 1
  b.begin_thread();
  b.push(Label::mk_w(x, 0, second_sc ? O::SC : O::RLX));     // 2
  b.begin_thread();
  b.push(Label::mk_r(x, 0, O::RLX));                         // 3
  b.push(Label::mk_w(y, 1, O::SC));                          // 4
  return b.build();
}

/// Every well-formed witness, found the slow way: filter each subset of
/// the candidate pair sets through the well-formedness predicate itself.
std::set<std::string> naive_witnesses(const Execution& x, bool needs_S) {
  const std::uint32_t n = x.n;
  std::vector<std::pair<EventId, EventId>> rfc, moc, sc;
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      const Label& la = x.lbl[a];
      const Label& lb = x.lbl[b];
      if (la.is_write() && lb.is_read() && la.loc == lb.loc && la.wval &&
          lb.rval && *la.wval == *lb.rval) {
        rfc.push_back({a, b});
      }
      if (a != b && la.is_write() && lb.is_write() && la.loc == lb.loc &&
          la.loc >= 0 && x.locations[static_cast<std::size_t>(la.loc)].atomic) {
        moc.push_back({a, b});
      }
      if (a != b && la.is_atomic() && lb.is_atomic() && la.ord == O::SC &&
          lb.ord == O::SC) {
        sc.push_back({a, b});
      }
    }
  }
  REQUIRE(rfc.size() + moc.size() + sc.size() <= 24);
  std::set<std::string> out;
  for (std::uint64_t mr = 0; mr < (1ull << rfc.size()); ++mr) {
    for (std::uint64_t mm = 0; mm < (1ull << moc.size()); ++mm) {
      for (std::uint64_t ms = 0; ms < (1ull << sc.size()); ++ms) {
        Witness w;
        w.rf = Relation(n);
        w.mo = Relation(n);
        for (std::size_t i = 0; i < rfc.size(); ++i) {
          if (mr & (1ull << i)) w.rf.insert(rfc[i].first, rfc[i].second);
        }
        for (std::size_t i = 0; i < moc.size(); ++i) {
          if (mm & (1ull << i)) w.mo.insert(moc[i].first, moc[i].second);
        }
        if (needs_S) {
          Relation s(n);
          for (std::size_t i = 0; i < sc.size(); ++i) {
            if (ms & (1ull << i)) s.insert(sc[i].first, sc[i].second);
          }
          w.S = s;
        } else if (ms > 0) {
          continue;  // nothing to vary without an order
        }
        if (wf_candidate(x, w, needs_S)) out.insert(show(w));
      }
    }
  }
  return out;
}

std::vector<std::string> enumerated_witnesses(const Execution& x,
                                              bool needs_S) {
  std::vector<std::string> out;
  checker::enumerate_witnesses(x, needs_S, 1u << 20,
                               [&](const Witness& w) -> bool {
                                 CHECK(wf_candidate(x, w, needs_S));
                                 out.push_back(show(w));
                                 return true;
                               });
  return out;
}

}  // namespace

TEST_CASE("witness enumeration matches the definition-level filter") {
  for (const bool second_sc : {false, true}) {
    const Execution x = two_source_exec(second_sc);
    for (const bool needs_S : {false, true}) {
      CAPTURE(second_sc);
      CAPTURE(needs_S);
      const std::vector<std::string> got = enumerated_witnesses(x, needs_S);
      const std::set<std::string> uniq(got.begin(), got.end());
      CHECK(uniq.size() == got.size());  // no duplicates
      CHECK(uniq == naive_witnesses(x, needs_S));
      CHECK(got.size() ==
            checker::count_witnesses(x, needs_S, 1u << 20));
    }
  }
  // A nonatomic location contributes reads-from choices but no
  // modification order.
  const Execution mp = golden::scope_mp(true).x;
  for (const bool needs_S : {false, true}) {
    const std::vector<std::string> got = enumerated_witnesses(mp, needs_S);
    CHECK(std::set<std::string>(got.begin(), got.end()) ==
          naive_witnesses(mp, needs_S));
  }
}

TEST_CASE("witness counts and order on the pinned mixed-seq_cst candidate") {
  const golden::PinnedCandidate g = golden::mixed_sc(true);
  // One reads-from choice (all written values are distinct), 3! orders for
  // the three x writes times 2! for the two y writes, and 4! orders of the
  // four seq_cst events.
  CHECK(checker::count_witnesses(g.x, false) == 12);
  CHECK(checker::count_witnesses(g.x, true) == 288);

  const std::vector<std::string> got = enumerated_witnesses(g.x, true);
  REQUIRE(got.size() == 288);
  CHECK(std::set<std::string>(got.begin(), got.end()).size() == 288);
  // The pinned witness itself is among them.
  const std::string pinned = show(g.w);
  CHECK(std::count(got.begin(), got.end(), pinned) == 1);
  // Determinism: a second pass yields the same sequence.
  CHECK(got == enumerated_witnesses(g.x, true));
  // The first witness takes every odometer at its least position: sources
  // and permutations in identifier order.
  Witness first;
  first.rf = Relation::from_pairs(g.x.n, {{2, 3}, {5, 4}, {1, 6}, {2, 8}});
  first.mo = Relation::from_pairs(
      g.x.n, {{0, 2}, {0, 5}, {2, 5}, {1, 7}});
  first.S = Relation::from_pairs(
      g.x.n, {{5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}});
  CHECK(got.front() == show(first));
}

TEST_CASE("enumeration budget is enforced") {
  const golden::PinnedCandidate g = golden::mixed_sc(true);
  CHECK_THROWS_AS(
      checker::enumerate_witnesses(g.x, true, 100,
                                   [](const Witness&) { return true; }),
      ResourceError);
  // At exactly the count the walk completes.
  std::uint64_t seen = 0;
  checker::enumerate_witnesses(g.x, true, 288, [&](const Witness&) {
    ++seen;
    return true;
  });
  CHECK(seen == 288);
}

TEST_CASE("judgement strategies agree and expose their candidate counts") {
  const golden::PinnedCandidate g = golden::mixed_sc(true);
  const cat::ModelDef orig = models::get_model("c11_orig");
  const cat::ModelDef partial = models::get_model("c11_partial");

  checker::CheckConfig pruned;
  checker::CheckConfig raw;
  raw.prune = false;

  const checker::ExecutionJudgment jp =
      checker::judge_execution(g.x, orig, pruned);
  const checker::ExecutionJudgment jr =
      checker::judge_execution(g.x, orig, raw);
  CHECK(jp.any_consistent);
  CHECK(!jp.any_faulty);
  CHECK(jp.any_consistent == jr.any_consistent);
  CHECK(jp.any_faulty == jr.any_faulty);
  // Pruned runs count (rf, mo) pairs; raw runs count full triples.
  CHECK(jp.tested == 12);
  CHECK(jr.tested == 288);

  // The overhauled axiom agrees with the explicit order's existential.
  const checker::ExecutionJudgment jq = checker::judge_execution(g.x, partial);
  CHECK(jq.any_consistent == jp.any_consistent);
  CHECK(jq.any_faulty == jp.any_faulty);
  CHECK(jq.tested == 12);
}

TEST_CASE("per-execution equivalence of the explicit and overhauled axioms") {
  // For every basic execution of a mixed seq_cst/relaxed program, the
  // explicit-order model admits a witness exactly when the partial-order
  // model does, and likewise for faultiness.
  const std::string src =
      "test mixed c11\n"
      "atomic int x = 0;\n"
      "atomic int y = 0;\n"
      "{ store(x, 1, rlx); }\n"
      " || { r1 = load(x, rlx); r2 = load(x, rlx); }\n"
      " || { store(x, 2); r3 = load(y); }\n"
      " || { store(y, 1); r4 = load(x); }\n";
  const frontend::LitmusProgram p = frontend::parse_litmus(src);
  const frontend::BasicSet bs = frontend::enumerate_basic(p);
  REQUIRE(bs.executions.size() == 54);
  const cat::ModelDef orig = models::get_model("c11_orig");
  const cat::ModelDef partial = models::get_model("c11_partial");
  checker::CheckConfig raw;
  raw.prune = false;
  int consistent_execs = 0;
  for (const frontend::BasicExecution& bx : bs.executions) {
    const checker::ExecutionJudgment jo = checker::judge_execution(bx.x, orig);
    const checker::ExecutionJudgment jr =
        checker::judge_execution(bx.x, orig, raw);
    const checker::ExecutionJudgment jq =
        checker::judge_execution(bx.x, partial);
    CHECK(jo.any_consistent == jq.any_consistent);
    CHECK(jo.any_faulty == jq.any_faulty);
    CHECK(jo.any_consistent == jr.any_consistent);
    CHECK(jo.any_faulty == jr.any_faulty);
    if (jo.any_consistent) ++consistent_execs;
  }
  CHECK(consistent_execs > 0);  // the comparison is not vacuous
}

TEST_CASE("store-buffering states under all three variants") {
  for (int n = 2; n <= 4; ++n) {
    CAPTURE(n);
    const checker::CheckReport simp = run(sb_src(n, true), "c11_simp");
    CHECK(simp.outcomes.size() == (1u << n) - 1);
    CHECK(!simp.undefined);
    CHECK(!simp.truncated);
    CHECK(simp.has_query);
    CHECK(!simp.query_witnessed);  // the all-zero outcome is forbidden
    bool all_ones = false;
    for (const auto& kv : simp.outcomes) {
      bool ones = true;
      for (const auto& [name, value] : kv.first.registers) {
        ones = ones && value == 1;
      }
      if (ones) all_ones = true;
      // Both flags always end raised.
      for (const auto& [name, value] : kv.first.memory) CHECK(value == 1);
      CHECK(kv.first.memory.size() == static_cast<std::size_t>(n));
    }
    CHECK(all_ones);

    const checker::CheckReport partial = run(sb_src(n, true), "c11_partial");
    CHECK(partial.undefined == simp.undefined);
    CHECK(partial.query_witnessed == simp.query_witnessed);
    const auto keys = [](const checker::CheckReport& r) {
      std::set<checker::Outcome> k;
      for (const auto& kv : r.outcomes) k.insert(kv.first);
      return k;
    };
    CHECK(keys(partial) == keys(simp));

    const checker::CheckReport orig = run(sb_src(n, true), "c11_orig");
    CHECK(orig.undefined == simp.undefined);
    CHECK(orig.query_witnessed == simp.query_witnessed);
    CHECK(keys(orig) == keys(simp));
  }
}

TEST_CASE("pruned and raw explicit-order runs render identically") {
  checker::CheckConfig raw;
  raw.prune = false;
  for (const std::string& src : {sb_src(2, true), sb_src(3, false)}) {
    const checker::CheckReport p = run(src, "c11_orig");
    const checker::CheckReport r = run(src, "c11_orig", raw);
    CHECK(checker::render_text_report(p) == checker::render_text_report(r));
    // The raw run works strictly harder.
    CHECK(r.stats.candidates_tested > p.stats.candidates_tested);
  }
}

TEST_CASE("report text is bit-exact for the two-thread store buffer") {
  const checker::CheckReport rep = run(sb_src(2, true), "c11_simp");
  CHECK(checker::render_text_report(rep) ==
        "Test sb2 model=c11_simp\n"
        "Undefined: no\n"
        "States 3\n"
        "r1=0; r2=1; x1=1; x2=1\n"
        "r1=1; r2=0; x1=1; x2=1\n"
        "r1=1; r2=1; x1=1; x2=1\n"
        "Query: not-witnessed\n");
}

TEST_CASE("removing the seq_cst axiom readmits the all-zero outcome") {
  cat::ModelDef no_sc = models::get_model("c11_simp");
  no_sc.constraints.erase(
      std::remove_if(no_sc.constraints.begin(), no_sc.constraints.end(),
                     [](const cat::Constraint& c) { return c.name == "Ssimp"; }),
      no_sc.constraints.end());
  const frontend::LitmusProgram p = frontend::parse_litmus(sb_src(2, true));
  const checker::CheckReport rep = checker::allowed(p, no_sc);
  CHECK(rep.outcomes.size() == 4);
  CHECK(rep.query_witnessed);
}

TEST_CASE("an unsynchronised nonatomic conflict is undefined") {
  const std::string src =
      "test race c11\n"
      "int x = 0;\n"
      "{ *x = 1; } || { r1 = *x; }\n";
  const checker::CheckReport rep = run(src, "c11_simp");
  CHECK(checker::render_text_report(rep) ==
        "Test race model=c11_simp\n"
        "Undefined: yes\n"
        "States 1\n"
        "r1=0\n");

  // Fast mode reaches the same verdict and is allowed to stop early.
  checker::CheckConfig fast;
  fast.fast = true;
  const checker::CheckReport frep = run(src, "c11_simp", fast);
  CHECK(frep.undefined);
}

TEST_CASE("register names shared between threads are qualified") {
  const std::string src =
      "test shared c11\n"
      "atomic int x = 1;\n"
      "{ r1 = load(x); } || { r1 = load(x); }\n";
  const checker::CheckReport rep = run(src, "c11_simp");
  CHECK(checker::render_text_report(rep) ==
        "Test shared model=c11_simp\n"
        "Undefined: no\n"
        "States 1\n"
        "t1:r1=1; t2:r1=1; x=1\n");
}

TEST_CASE("a truncated loop is reported") {
  const std::string src =
      "test spin c11\n"
      "atomic int x = 0;\n"
      "{ store(x, 1); } || { while (r1 != 1) { r1 = load(x); } }\n";
  const checker::CheckReport rep = run(src, "c11_simp");
  CHECK(rep.truncated);
  CHECK(checker::render_text_report(rep) ==
        "Test spin model=c11_simp\n"
        "Undefined: no\n"
        "States 1\n"
        "r1=1; x=1\n"
        "Truncated: yes\n");
}

TEST_CASE("worker fan-out leaves the report unchanged") {
  checker::CheckConfig two;
  two.workers = 2;
  const checker::CheckReport one = run(sb_src(3, true), "c11_orig");
  const checker::CheckReport par = run(sb_src(3, true), "c11_orig", two);
  CHECK(checker::render_text_report(one) == checker::render_text_report(par));
  CHECK(one.stats.candidates_tested == par.stats.candidates_tested);
  CHECK(one.stats.candidates_consistent == par.stats.candidates_consistent);
}

TEST_CASE("the per-execution candidate budget is enforced") {
  checker::CheckConfig tiny;
  tiny.max_candidates = 3;
  CHECK_THROWS_AS(run(sb_src(2, false), "c11_simp", tiny), ResourceError);
}

TEST_CASE("the wall-clock budget aborts an oversized raw scan") {
  checker::CheckConfig brief;
  brief.prune = false;
  brief.max_seconds = 0.05;
  CHECK_THROWS_AS(run(sb_src(4, false), "c11_orig", brief), ResourceError);
}

TEST_CASE("scope inclusion splits the message-passing verdict") {
  // The payload read is guarded by the flag: only the synchronised-or-racy
  // executions touch x from the second thread.
  const std::string src =
      "test scope_mp opencl\n"
      "global int x = 0;\n"
      "global atomic int y = 0;\n"
      "{ *x = 42; store(y, 1, rel, dv); }\n"
      " || { r1 = load(y, acq, wg); if (r1 == 1) { r2 = *x; } }\n";
  // Under the default inclusion the device-scoped release and the
  // work-group-scoped acquire never synchronise: the guarded read races.
  const checker::CheckReport narrow = run(src, "opencl_simp");
  CHECK(narrow.undefined);
  // Under the widened inclusion each side's scope reaches the other, the
  // release synchronises, and the payload arrives fresh.
  models::ModelOptions widened;
  widened.new_incl = true;
  const checker::CheckReport wide = run(src, "opencl_simp", {}, widened);
  CHECK(!wide.undefined);
  bool fresh = false;
  bool stale = false;
  for (const auto& kv : wide.outcomes) {
    const auto& regs = kv.first.registers;
    const auto r2 = regs.find("r2");
    if (regs.at("r1") == 1) {
      // Visibility forces the payload: 42 is the only admissible read.
      REQUIRE(r2 != regs.end());
      CHECK(r2->second == 42);
      fresh = true;
    } else {
      stale = r2 == regs.end();
    }
  }
  CHECK(fresh);
  CHECK(stale);
  // The scoped variant of the seq_cst axiom has nothing to say here (there
  // are no seq_cst events) and must agree with the simplified one.
  const checker::CheckReport scoped = run(src, "opencl_scoped");
  CHECK(scoped.undefined == narrow.undefined);
}

TEST_CASE("malformed witness declarations are rejected loudly") {
  const Execution x = two_source_exec(true);
  cat::ModelDef doubled = models::get_model("c11_orig");
  doubled.witness_decls.push_back(doubled.witness_decls.front());
  CHECK_THROWS_AS(checker::judge_execution(x, doubled), StructuralError);

  // An order declared over something other than the seq_cst events clashes
  // with the well-formedness discipline the enumerator implements.
  const cat::ModelDef wrong_set =
      cat::parse_model("witness S linear over W\nirreflexive S ; rf as X\n");
  CHECK_THROWS_AS(checker::judge_execution(x, wrong_set), StructuralError);
}
