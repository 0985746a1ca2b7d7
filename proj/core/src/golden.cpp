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

#include "axmm/golden.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace axmm::golden {
namespace {

using O = MemoryOrder;
using S = Scope;

Relation rel_of(std::uint32_t n,
                std::initializer_list<std::pair<EventId, EventId>> ps) {
  Relation r(n);
  for (auto [a, b] : ps) r.insert(a, b);
  return r;
}

}  // namespace

PinnedCandidate mixed_sc(bool with_s) {
  ExecutionBuilder b({{"x", true, Region::C11}, {"y", true, Region::C11}},
                     false);
  const auto x = b.loc_index("x");
  const auto y = b.loc_index("y");
  b.init("x", 0);                          // 0
  b.init("y", 0);                          // 1
  b.begin_thread();
  b.push(Label::mk_w(x, 1, O::RLX));       // 2
  b.begin_thread();
  b.push(Label::mk_r(x, 1, O::RLX));       // 3
  b.push(Label::mk_r(x, 2, O::RLX));       // 4
  b.begin_thread();
  b.push(Label::mk_w(x, 2, O::SC));        // 5
  b.push(Label::mk_r(y, 0, O::SC));        // 6
  b.begin_thread();
  b.push(Label::mk_w(y, 1, O::SC));        // 7
  b.push(Label::mk_r(x, 1, O::SC));        // 8

  PinnedCandidate c;
  c.name = "mixed_sc";
  c.x = b.build();
  c.w.rf = rel_of(c.x.n, {{2, 3}, {5, 4}, {1, 6}, {2, 8}});
  c.w.mo = rel_of(c.x.n, {{0, 2}, {0, 5}, {2, 5}, {1, 7}});
  if (with_s) {
    // Total over the SC events {5,6,7,8} in id order: the late relaxed-read
    // thread observes the older store after the newer one is ordered last.
    c.w.S = rel_of(c.x.n, {{5, 6}, {5, 7}, {5, 8}, {6, 7}, {6, 8}, {7, 8}});
  }
  return c;
}

PinnedCandidate local_flag_mp() {
  ExecutionBuilder b(
      {{"x", false, Region::Global}, {"y", true, Region::Local}}, true);
  const auto x = b.loc_index("x");
  const auto y = b.loc_index("y");
  b.init("x", 0);                              // 0
  b.init("y", 0);                              // 1
  b.begin_device();
  b.begin_workgroup();
  b.begin_thread();
  b.push(Label::mk_wna(x, 42));                // 2: payload
  b.push(Label::mk_w(y, 1, O::REL, S::WG));    // 3: flag
  b.begin_thread();
  b.push(Label::mk_r(y, 1, O::ACQ, S::WG));    // 4: sees flag
  b.push(Label::mk_rna(x, 0));                 // 5: stale payload

  PinnedCandidate c;
  c.name = "local_flag_mp";
  c.x = b.build();
  c.w.rf = rel_of(c.x.n, {{3, 4}, {0, 5}});
  c.w.mo = rel_of(c.x.n, {{1, 3}});  // x is non-atomic: no mo there
  return c;
}

PinnedCandidate gl_fence_mp() {
  // Both locations atomically typed; the payload is accessed with plain
  // operations but participates in modification order.
  ExecutionBuilder b(
      {{"x", true, Region::Global}, {"y", true, Region::Local}}, true);
  const auto x = b.loc_index("x");
  const auto y = b.loc_index("y");
  b.init("x", 0);                              // 0
  b.init("y", 0);                              // 1
  b.begin_device();
  b.begin_workgroup();
  b.begin_thread();
  b.push(Label::mk_wna(x, 1));                 // 2: payload
  b.push(Label::mk_fgl(O::REL, S::WG));        // 3
  b.push(Label::mk_w(y, 1, O::RLX, S::WG));    // 4: flag
  b.begin_thread();
  b.push(Label::mk_r(y, 1, O::RLX, S::WG));    // 5: sees flag
  b.push(Label::mk_fgl(O::ACQ, S::WG));        // 6
  b.push(Label::mk_rna(x, 0));                 // 7: stale payload

  PinnedCandidate c;
  c.name = "gl_fence_mp";
  c.x = b.build();
  c.w.rf = rel_of(c.x.n, {{4, 5}, {0, 7}});
  c.w.mo = rel_of(c.x.n, {{0, 2}, {1, 4}});
  return c;
}

namespace {

PinnedCandidate lb_base(bool atomic) {
  ExecutionBuilder b({{"x", atomic, Region::Global},
                      {"y", atomic, Region::Global}},
                     true);
  const auto x = b.loc_index("x");
  const auto y = b.loc_index("y");
  b.init("x", 0);  // 0
  b.init("y", 0);  // 1
  b.begin_device();
  b.begin_workgroup();
  b.begin_thread();
  if (atomic) {
    b.push(Label::mk_r(x, 1, O::RLX, S::WI));  // 2
    b.push(Label::mk_w(y, 1, O::RLX, S::WI));  // 3
  } else {
    b.push(Label::mk_rna(x, 1));               // 2
    b.push(Label::mk_wna(y, 1));               // 3
  }
  b.begin_thread();
  if (atomic) {
    b.push(Label::mk_r(y, 1, O::RLX, S::WI));  // 4
    b.push(Label::mk_w(x, 1, O::RLX, S::WI));  // 5
  } else {
    b.push(Label::mk_rna(y, 1));               // 4
    b.push(Label::mk_wna(x, 1));               // 5
  }

  PinnedCandidate c;
  c.name = atomic ? "lb_workitem" : "lb_nonatomic";
  c.x = b.build();
  c.w.rf = rel_of(c.x.n, {{5, 2}, {3, 4}});
  c.w.mo = atomic ? rel_of(c.x.n, {{0, 5}, {1, 3}}) : Relation(c.x.n);
  return c;
}

}  // namespace

PinnedCandidate lb_nonatomic() { return lb_base(false); }
PinnedCandidate lb_workitem() { return lb_base(true); }

PinnedCandidate scope_mp(bool stale) {
  ExecutionBuilder b(
      {{"x", false, Region::Global}, {"y", true, Region::Global}}, true);
  const auto x = b.loc_index("x");
  const auto y = b.loc_index("y");
  b.init("x", 0);                              // 0
  b.init("y", 0);                              // 1
  b.begin_device();
  b.begin_workgroup();
  b.begin_thread();
  b.push(Label::mk_wna(x, 42));                // 2: payload
  b.push(Label::mk_w(y, 1, O::REL, S::DV));    // 3: device-scoped flag
  b.begin_thread();
  b.push(Label::mk_r(y, 1, O::ACQ, S::WG));    // 4: narrower acquire
  b.push(Label::mk_rna(x, stale ? 0 : 42));    // 5

  PinnedCandidate c;
  c.name = stale ? "scope_mp_stale" : "scope_mp_fresh";
  c.x = b.build();
  c.w.rf = rel_of(c.x.n, {{3, 4}, {stale ? EventId{0} : EventId{2}, 5}});
  c.w.mo = rel_of(c.x.n, {{1, 3}});
  return c;
}

PinnedCandidate twisted_sb() {
  ExecutionBuilder b({{"x", true, Region::Global},
                      {"y", true, Region::Global},
                      {"z1", true, Region::GlobalFgb},
                      {"z2", true, Region::GlobalFgb}},
                     true);
  const auto x = b.loc_index("x");
  const auto y = b.loc_index("y");
  const auto z1 = b.loc_index("z1");
  const auto z2 = b.loc_index("z2");
  b.init("x", 0);   // 0
  b.init("y", 0);   // 1
  b.init("z1", 0);  // 2
  b.init("z2", 0);  // 3
  b.begin_device();
  b.begin_workgroup();
  b.begin_thread();
  b.push(Label::mk_w(x, 1, O::SC, S::DV));      // 4
  b.push(Label::mk_w(z1, 1, O::REL, S::ALL));   // 5
  b.begin_workgroup();
  b.begin_thread();
  b.push(Label::mk_r(z2, 1, O::ACQ, S::ALL));   // 6
  b.push(Label::mk_r(x, 0, O::SC, S::DV));      // 7
  b.begin_device();
  b.begin_workgroup();
  b.begin_thread();
  b.push(Label::mk_w(y, 1, O::SC, S::DV));      // 8
  b.push(Label::mk_w(z2, 1, O::REL, S::ALL));   // 9
  b.begin_workgroup();
  b.begin_thread();
  b.push(Label::mk_r(z1, 1, O::ACQ, S::ALL));   // 10
  b.push(Label::mk_r(y, 0, O::SC, S::DV));      // 11

  PinnedCandidate c;
  c.name = "twisted_sb";
  c.x = b.build();
  c.w.rf = rel_of(c.x.n, {{5, 10}, {9, 6}, {0, 7}, {1, 11}});
  c.w.mo = rel_of(c.x.n, {{0, 4}, {1, 8}, {2, 5}, {3, 9}});
  return c;
}

std::vector<CandidateCase> candidate_corpus() {
  std::vector<CandidateCase> cs;
  auto add = [&cs](std::string name, std::string note, std::string model,
                   models::ModelOptions opts, PinnedCandidate cand,
                   bool consistent, bool faulty,
                   std::vector<std::string> failed) {
    CandidateCase c;
    c.name = std::move(name);
    c.note = std::move(note);
    c.model = std::move(model);
    c.options = opts;
    c.candidate = std::move(cand);
    c.expect_consistent = consistent;
    c.expect_faulty = faulty;
    c.expect_failed = std::move(failed);
    cs.push_back(std::move(c));
  };

  add("mixed_sc/c11_orig",
      "an explicit S in id order satisfies all seven S axioms",
      "c11_orig", {}, mixed_sc(true), true, false, {});
  add("mixed_sc/c11_partial",
      "the union-of-edges acyclicity admits the same candidate with no S",
      "c11_partial", {}, mixed_sc(false), true, false, {});
  add("mixed_sc/c11_simp",
      "the simplified SC axiom is strictly stronger here and rejects it",
      "c11_simp", {}, mixed_sc(false), false, false, {"Ssimp"});

  add("local_flag_mp/opencl_simp",
      "work-group release/acquire on a local flag leaves the global payload "
      "racy",
      "opencl_simp", {}, local_flag_mp(), true, true, {"Hr"});
  add("local_flag_mp/opencl_scoped",
      "the scoped variant judges the race identically",
      "opencl_scoped", {}, local_flag_mp(), true, true, {"Hr"});

  add("gl_fence_mp/opencl_simp",
      "global-and-local fences promote local flag synchronisation into "
      "global happens-before, so the stale read breaks global coherence",
      "opencl_simp", {}, gl_fence_mp(), false, false, {"CohG"});
  add("gl_fence_mp/opencl_scoped",
      "the scoped variant shares the coherence axioms and agrees",
      "opencl_scoped", {}, gl_fence_mp(), false, false, {"CohG"});

  add("lb_nonatomic/opencl_simp",
      "non-atomic load buffering: neither load's writer is visible",
      "opencl_simp", {}, lb_nonatomic(), false, false, {"NaRfG"});
  add("lb_workitem/opencl_simp",
      "work-item-scoped atomics make the same shape consistent but the "
      "conflicting accesses share no scope and race",
      "opencl_simp", {}, lb_workitem(), true, true, {"Hr"});

  add("scope_mp_stale/opencl_simp",
      "device-scoped release read by a narrower work-group acquire does not "
      "synchronise, so the stale payload read is a race",
      "opencl_simp", {}, scope_mp(true), true, true, {"Hr"});
  add("scope_mp_stale/opencl_simp/new_incl",
      "under mutual-reach inclusion the pair synchronises, so the stale "
      "read contradicts visibility instead",
      "opencl_simp", {.new_incl = true}, scope_mp(true), false, false,
      {"NaRfG"});
  add("scope_mp_fresh/opencl_simp",
      "without synchronisation the fresh payload read is unreadable",
      "opencl_simp", {}, scope_mp(false), false, false, {"NaRfG"});
  add("scope_mp_fresh/opencl_simp/new_incl",
      "with mutual-reach inclusion the handoff is race-free and consistent",
      "opencl_simp", {.new_incl = true}, scope_mp(false), true, false, {});

  add("twisted_sb/opencl_simp",
      "every SC access is device-scoped off fine-grained buffers, so the "
      "configuration guard holds and the cross-device SC cycle is rejected",
      "opencl_simp", {}, twisted_sb(), false, false, {"Ssimp"});
  add("twisted_sb/opencl_scoped",
      "cross-device SC pairs are not mutually inclusive, so the pairwise SC "
      "axiom keeps only the per-device edges and admits the cycle",
      "opencl_scoped", {}, twisted_sb(), true, false, {});

  return cs;
}

std::vector<ProgramCase> program_corpus() {
  std::vector<ProgramCase> cs;
  auto add = [&cs](std::string name, std::string note, std::string file,
                   std::string model, models::ModelOptions opts,
                   bool allow_wi, bool undefined,
                   std::optional<bool> query, std::optional<std::size_t> states) {
    ProgramCase c;
    c.name = std::move(name);
    c.note = std::move(note);
    c.file = std::move(file);
    c.model = std::move(model);
    c.options = opts;
    c.allow_wi = allow_wi;
    c.expect_undefined = undefined;
    c.expect_query_witnessed = query;
    c.expect_states = states;
    cs.push_back(std::move(c));
  };

  add("sb2.litmus/c11_simp",
      "two-thread store buffering has exactly 2^2-1 final states and never "
      "both loads stale",
      "sb2.litmus", "c11_simp", {}, false, false, false, 3);
  add("sb3.litmus/c11_simp",
      "three-thread store buffering: 2^3-1 states, all-stale absent",
      "sb3.litmus", "c11_simp", {}, false, false, false, 7);
  add("sb4.litmus/c11_simp",
      "four-thread store buffering: 2^4-1 states, all-stale absent",
      "sb4.litmus", "c11_simp", {}, false, false, false, 15);
  add("iriw.litmus/c11_simp",
      "independent reads of independent writes: with every access "
      "sequentially consistent the two readers cannot disagree on the "
      "write order, leaving 15 of 16 read combinations",
      "iriw.litmus", "c11_simp", {}, false, false, false, 15);

  add("mp_local_flag.litmus/opencl_simp",
      "a work-group release/acquire flag in local memory orders nothing "
      "global, so the non-atomic payload races and the program is undefined",
      "mp_local_flag.litmus", "opencl_simp", {}, false, true, true, 2);
  add("mp_fence_gl.litmus/opencl_simp",
      "global-and-local fences around the same handoff carry the "
      "synchronisation into global happens-before: defined, stale read gone",
      "mp_fence_gl.litmus", "opencl_simp", {}, false, false, false, 2);

  add("lb_nonatomic.litmus/opencl_simp",
      "non-atomic load buffering: neither speculative write is visible to "
      "the other thread's read, so only the all-zero state remains",
      "lb_nonatomic.litmus", "opencl_simp", {}, false, false, false, 1);
  add("lb_workitem.litmus/opencl_simp",
      "work-item-scoped atomics lift the visibility restriction, making "
      "the relaxed outcome observable, but such atomics share scope with "
      "nobody and therefore race",
      "lb_workitem.litmus", "opencl_simp", {}, true, true, true, 2);

  add("mp_scopes.litmus/opencl_simp",
      "a device-scoped release read by a work-group-scoped acquire does "
      "not synchronise under exact-match inclusion: the handoff races",
      "mp_scopes.litmus", "opencl_simp", {}, false, true, false, 2);
  add("mp_scopes.litmus/opencl_simp/new_incl",
      "under mutual-reach inclusion the same pair synchronises: defined, "
      "and the published payload is read",
      "mp_scopes.litmus", "opencl_simp", {.new_incl = true}, false, false,
      true, 2);

  add("sb_scoped_global.litmus/opencl_simp",
      "device-scope SC store buffering through ordinary global memory "
      "keeps the SC total order, so the relaxed outcome is absent",
      "sb_scoped_global.litmus", "opencl_simp", {}, false, false, false, 3);
  add("sb_scoped_global.litmus/opencl_scoped",
      "the pairwise-scoped SC axiom agrees: both accesses of each location "
      "are device-wide on one device",
      "sb_scoped_global.litmus", "opencl_scoped", {}, false, false, false, 3);
  add("sb_scoped_fgb.litmus/opencl_simp",
      "moving the same test onto fine-grained buffers voids the SC "
      "guarantee wholesale and the relaxed outcome appears",
      "sb_scoped_fgb.litmus", "opencl_simp", {}, false, false, true, 4);
  add("sb_scoped_fgb.litmus/opencl_scoped",
      "the pairwise-scoped SC axiom never drops edges between mutually "
      "device-wide accesses, fine-grained buffers or not: relaxed outcome "
      "forbidden again",
      "sb_scoped_fgb.litmus", "opencl_scoped", {}, false, false, false, 3);

  add("sb_twisted.litmus/opencl_simp",
      "cross-device store buffering with every SC access device-scoped: "
      "the whole-order SC guard still applies and forbids the twisted "
      "outcome",
      "sb_twisted.litmus", "opencl_simp", {}, false, false, false, 8);
  add("sb_twisted.litmus/opencl_scoped",
      "pairwise scoped SC keeps only same-device SC edges, so the "
      "cross-device cycle is admitted and the twisted outcome observed",
      "sb_twisted.litmus", "opencl_scoped", {}, false, false, true, 9);

  return cs;
}

frontend::LitmusProgram load_program(const std::string& dir,
                                     const ProgramCase& c) {
  const std::string path = dir + "/" + c.file;
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read litmus corpus file " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  frontend::ParseOptions po;
  po.allow_wi = c.allow_wi;
  return frontend::parse_litmus(text.str(), po);
}

}  // namespace axmm::golden
