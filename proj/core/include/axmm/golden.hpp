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
// Pinned verdicts the shipped models are known to produce, in two tiers.
// Candidate cases pin one hand-drawn execution plus one chosen witness to an
// exact per-axiom verdict; program cases pin whole litmus files to their
// checker report (undefined flag, distinct-state count, query witnessing).
// The corpus binds those classifications so any drift in the model texts,
// the evaluator, or the enumeration fails loudly.

#ifndef AXMM_GOLDEN_HPP
#define AXMM_GOLDEN_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "axmm/events.hpp"
#include "axmm/frontend.hpp"
#include "axmm/models.hpp"

namespace axmm::golden {

/// A hand-pinned candidate: an execution and one witness for it.
struct PinnedCandidate {
  std::string name;
  Execution x;
  Witness w;
};

/// Four threads on two atomic locations mixing seq_cst with relaxed
/// accesses on one location. The witness's S orders the four seq_cst events
/// in id order; `with_s` selects whether S is attached (the explicit-S
/// model demands it, the S-free models reject its presence).
PinnedCandidate mixed_sc(bool with_s);

/// Message passing through a work-group-scoped release/acquire flag in
/// local memory, with the payload in a non-atomic global: the flag
/// synchronises only the local region, so the stale payload read races.
PinnedCandidate local_flag_mp();

/// Message passing where release and acquire are global-and-local fences:
/// fence pairs carry synchronisation across regions, so the stale payload
/// read contradicts global coherence.
PinnedCandidate gl_fence_mp();

/// Load buffering with non-atomic accesses, both loads reading the other
/// thread's unsynchronised store.
PinnedCandidate lb_nonatomic();

/// The same load buffering with work-item-scoped atomics: consistent, but
/// the conflicting accesses share no scope and race.
PinnedCandidate lb_workitem();

/// Message passing with a device-scoped release store read by a
/// work-group-scoped acquire load in the same work-group. `stale` selects
/// whether the payload read returns the initial value or the written one.
PinnedCandidate scope_mp(bool stale);

/// Two devices playing store buffering against each other through
/// fine-grained-buffer handshakes, every SC access device-scoped; the
/// relaxed outcome's candidate. Device-local SC cycles are absent, so only
/// an axiom ranging over cross-device SC pairs can reject it.
PinnedCandidate twisted_sb();

/// One expected verdict of one model on one pinned candidate.
struct CandidateCase {
  std::string name;   // stable, unique across the corpus
  std::string note;   // the behaviour being pinned, in plain words
  std::string model;  // built-in model name
  models::ModelOptions options;
  PinnedCandidate candidate;
  bool expect_consistent = false;
  bool expect_faulty = false;
  /// Exact expected failed_axioms (order follows the model text).
  std::vector<std::string> expect_failed;
};

/// All pinned-candidate verdicts.
std::vector<CandidateCase> candidate_corpus();

/// One expected checker report for one litmus file under one model. Every
/// expectation here was produced by running the checker and transcribing
/// its output, so a mismatch means behaviour drifted, not that the pin was
/// guessed wrong.
struct ProgramCase {
  std::string name;   // stable, unique across the corpus
  std::string note;   // the behaviour being pinned, in plain words
  std::string file;   // filename inside the litmus corpus directory
  std::string model;  // built-in model name
  models::ModelOptions options;
  /// The file uses the opt-in work-item scope.
  bool allow_wi = false;
  bool expect_undefined = false;
  /// Set iff the file carries a final-state query.
  std::optional<bool> expect_query_witnessed;
  /// Exact number of distinct final states, when pinned.
  std::optional<std::size_t> expect_states;
};

/// All litmus-file verdicts. Files are named relative to a corpus
/// directory the caller supplies (tests receive it from the build).
std::vector<ProgramCase> program_corpus();

/// Reads `dir/file` and parses it with the case's parse options. Throws
/// std::runtime_error when the file cannot be read, ParseError when it
/// does not parse.
frontend::LitmusProgram load_program(const std::string& dir,
                                     const ProgramCase& c);

}  // namespace axmm::golden

#endif  // AXMM_GOLDEN_HPP
