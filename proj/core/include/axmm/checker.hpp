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

#ifndef AXMM_CHECKER_HPP
#define AXMM_CHECKER_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "axmm/catdsl.hpp"
#include "axmm/events.hpp"
#include "axmm/frontend.hpp"

/// The checker ties the other layers together: it expands a litmus program
/// into its basic set, completes each execution with every well-formed
/// witness, judges the candidates under a model, and folds the survivors
/// into the set of allowed final states.
///
/// Candidate enumeration is exhaustive by construction. Reads-from choices
/// range over the same-location same-value writes for each read, one
/// modification order is tried per permutation of each atomic location's
/// writes, and, for models that declare a witness order, one S per
/// permutation of the SC events. Exhaustiveness over well-formed witnesses
/// is what makes the reported state sets trustworthy, so the test suite
/// cross-checks the enumerator against a definition-level filter.
///
/// For witness models a pruned search is used by default instead of the raw
/// S odometer. The model's S axioms are compiled into edge tests and a
/// depth-first insertion of SC events abandons every prefix that already
/// violates one, stopping at the first admissible S. One admissible S
/// suffices because the judgement of interest is existential, and the final
/// states and fault verdicts never depend on which S witnessed them. The
/// pruned and raw strategies are mutually redundant on purpose: each found
/// S is re-judged by the ordinary evaluator, and the test suite checks that
/// both strategies agree verdict for verdict.
namespace axmm::checker {

/// Counts the witnesses enumerate_witnesses would yield: the product of the
/// per-read source counts, the factorials of the per-location write counts
/// for atomic locations, and, with needs_S, the factorial of the SC event
/// count. Saturates at cap + 1 so callers can test against cap without
/// overflow.
std::uint64_t count_witnesses(const Execution& x, bool needs_S,
                              std::uint64_t cap = 10'000'000);

/// Yields every well-formed witness of x, S included exactly when needs_S.
/// The order is deterministic: an odometer over per-read source choices
/// (reads in identifier order, sources in identifier order), then one
/// modification order per combination of per-location write permutations in
/// lexicographic order, then, innermost and fastest, one S per lexicographic
/// permutation of the SC events. Stops early when yield returns false.
/// Throws ResourceError when count_witnesses exceeds cap.
void enumerate_witnesses(const Execution& x, bool needs_S, std::uint64_t cap,
                         const std::function<bool(const Witness&)>& yield);

/// A final state: the registers each thread ended with and, for every
/// atomic location, the value of its modification-order-maximal write.
/// Register names are qualified with their thread ("t2:r1") only when two
/// threads use the same name. Nonatomic locations carry no final value;
/// their ordering is the models' business, not the outcome's.
struct Outcome {
  std::map<std::string, std::int64_t> registers;
  std::map<std::string, std::int64_t> memory;
  auto operator<=>(const Outcome&) const = default;
};

struct CheckConfig {
  frontend::EnumerateConfig enumerate;
  /// Per-execution candidate budget. Pruned runs count (rf, mo) pairs
  /// against it, raw runs count full (rf, mo, S) triples. The bound is
  /// checked before enumeration starts; exceeding it throws ResourceError.
  /// The pruned S search itself is not budgeted: it visits at most one
  /// admissible S per pair, though a run of dead-end prefixes can still
  /// make a single pair expensive in the worst case.
  std::uint64_t max_candidates = 10'000'000;
  /// Use the pruned S search for witness models. When false every S
  /// permutation is enumerated and judged separately, which restores the
  /// factorial cost that makes explicit-S models expensive; the benchmark
  /// harness relies on that to measure the cost honestly.
  bool prune = true;
  /// Stop enumerating as soon as one faulty candidate is found. The
  /// undefined-behaviour verdict is then final, but the state set and the
  /// statistics cover only the candidates seen up to that point.
  bool fast = false;
  /// Worker threads to spread executions over. Results are merged in
  /// execution order, so the report is identical for any worker count.
  unsigned workers = 1;
  /// Wall-clock budget in seconds; 0 means unlimited. When the budget is
  /// exhausted mid-scan the run aborts with ResourceError, which is how
  /// the benchmark harness bounds the expensive explicit-order runs.
  double max_seconds = 0.0;
};

struct CheckStats {
  std::uint64_t basic_executions = 0;
  /// Candidates judged: (rf, mo) pairs under the pruned strategy, full
  /// (rf, mo, S) triples under the raw one.
  std::uint64_t candidates_tested = 0;
  std::uint64_t candidates_consistent = 0;
  double seconds = 0.0;
};

struct CheckReport {
  std::string test_name;
  std::string model_name;
  /// True when some candidate is consistent yet faulty; the program then
  /// has no defined final states, whatever outcomes says.
  bool undefined = false;
  /// True when a loop exceeded the unrolling bound, so the basic set and
  /// everything derived from it is a lower approximation.
  bool truncated = false;
  /// Distinct final states of consistent candidates, with the number of
  /// candidates that produced each.
  std::map<Outcome, std::uint64_t> outcomes;
  bool has_query = false;
  /// True when some consistent candidate satisfied every query atom. A
  /// register atom holds only if the register was assigned on the path.
  bool query_witnessed = false;
  CheckStats stats;
};

/// Whether any witness makes the execution consistent, respectively
/// consistent and faulty, under the model. The same enumeration and pruning
/// strategy switches as allowed() apply.
struct ExecutionJudgment {
  bool any_consistent = false;
  bool any_faulty = false;
  std::uint64_t tested = 0;
};

ExecutionJudgment judge_execution(const Execution& x, const cat::ModelDef& m,
                                  const CheckConfig& cfg = {});

/// Runs the full pipeline: basic set, witnesses, judgement, state folding.
/// Throws ParseError never (the program is already parsed), ResourceError
/// on budget overruns, StructuralError if an internal cross-check fails.
CheckReport allowed(const frontend::LitmusProgram& p, const cat::ModelDef& m,
                    const CheckConfig& cfg = {});

/// Renders the fixed text form:
///
///   Test <name> model=<model>
///   Undefined: yes|no
///   States <K>
///   <K lines "name=value; ..." in lexicographic order, registers first
///    and memory after, each group sorted by name>
///   Query: witnessed|not-witnessed     (only when the test has a query)
///   Truncated: yes                     (only when the basic set was cut)
std::string render_text_report(const CheckReport& r);

}  // namespace axmm::checker

#endif  // AXMM_CHECKER_HPP
