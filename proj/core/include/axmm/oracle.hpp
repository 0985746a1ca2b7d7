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

#ifndef AXMM_ORACLE_HPP
#define AXMM_ORACLE_HPP

#include <cstdint>

#include "axmm/events.hpp"
#include "axmm/relalg.hpp"

// Brute-force cross-validation of the model transcriptions.
//
// The shipped model family makes three reductions that must never change a
// verdict: an enumerated total order over the SC events can be replaced by
// one acyclicity test (check_order_reduction, check_sc_elimination and
// check_partial_equivalence), and the resulting union of edge families can
// be folded into a single fence-bracketed formula once the from-read family
// is strengthened (check_sc_simplification). Each check decides both sides
// of one such equivalence with unrelated algorithms - explicit enumeration
// of total orders on one side, a single acyclicity or whole-model test on
// the other - and reports whether they agreed. The checks are exercised on
// small randomly generated candidates; a disagreement on any well-formed
// candidate indicts the transcription of the models or of the relational
// algebra underneath them, so the test suite treats one as a build-stopping
// defect.

namespace axmm::oracle {

/// Bounds and seed for the random candidate generator. One spec describes
/// one candidate; drawing a batch means varying `seed`.
struct RandomCandidateSpec {
  std::uint64_t seed = 0;

  /// Number of non-initial events: exactly 0 when this is 0, otherwise
  /// drawn uniformly from 1..max_events. At most 8.
  unsigned max_events = 6;

  /// Number of locations declared and initialised (to 0): drawn uniformly
  /// from 1..max_locations. At most 2. With 0, candidates consist of fences
  /// only.
  unsigned max_locations = 2;

  /// False generates plain (unscoped) candidates; true generates scoped
  /// candidates with random regions, scopes, and scoped fences.
  bool opencl = false;

  /// Percentage of atomic events whose memory order is forced to SC. The SC
  /// fragment is where all the reductions under test bite; a uniform choice
  /// over the five orders would leave it under-exercised.
  unsigned sc_bias_percent = 30;

  /// Hard cap on SC events per candidate; excess SC draws are demoted to
  /// weaker orders, latest event first. Keeps the factorial side of the
  /// checks cheap.
  unsigned max_sc_events = 5;
};

/// One generated candidate. S is always absent: the checks quantify over
/// the SC order themselves.
struct Candidate {
  Execution x;
  Witness w;
};

/// Generates one well-formed candidate, deterministically in `spec` (the
/// same spec always yields the identical candidate). Event kinds, memory
/// orders, and scopes are drawn over everything the label grammar permits;
/// threads (one to three) and the per-thread program order are random;
/// write values are drawn from {0,1} and each read observes a uniformly
/// chosen same-location write other than itself, so reads-from holds by
/// construction. Modification order is a uniform random total order per
/// atomic location. Accesses to a local-region location are re-homed to a
/// single owning work-group, which region confinement requires. Throws
/// StructuralError if the bounds are exceeded or (defensively) if the
/// result fails well-formedness.
Candidate gen_candidate(const RandomCandidateSpec& spec);

/// Validates, on one candidate and one probe relation r, that a strict
/// total order S over the SC events with S;r irreflexive exists if and only
/// if r restricted to distinct SC pairs is acyclic. The left side is
/// decided by enumerating every total order, the right side by one
/// acyclicity test; an independent topological-sort existence test must
/// agree with the enumeration as well. Returns true when all three routes
/// agreed. Requires a well-formed candidate with S absent (StructuralError
/// otherwise, as for all four checks) and at most 6 SC events
/// (ResourceError), and r over the execution's universe.
bool check_order_reduction(const Execution& x, const Witness& w,
                           const Relation& r);

/// Validates that the seven irreflexivity axioms pinning the explicit SC
/// order - taking the happens-before-per-location family in its unguarded,
/// strengthened form - are satisfiable by some total order over the SC
/// events if and only if the union of their edge families, restricted to
/// distinct SC pairs, is acyclic. The left side enumerates total orders;
/// the right side is one acyclicity test over a hand-assembled union.
/// At most 6 SC events (ResourceError otherwise).
bool check_sc_elimination(const Execution& x, const Witness& w);

/// Validates that strengthening the from-read-through-SC edge family to
/// plain from-read collapses the partial-order formulation into the single
/// fence-bracketed formula shipped as c11_simp. The two sides are compared
/// as whole-model verdicts, both conditioned on the shared non-SC axioms:
/// the collapse folds the happens-before-per-location family into
/// from-read, which is sound only when modification order agrees with
/// happens-before per location, and only coherent candidates guarantee
/// that. On incoherent candidates the bare formulas can genuinely disagree
/// while both models are already inconsistent for the same shared reason.
/// One side evaluates the shipped c11_simp model; the other conjoins the
/// shared axioms with a hand-assembled acyclicity test. No SC bound is
/// needed: nothing here enumerates orders.
bool check_sc_simplification(const Execution& x, const Witness& w);

/// Validates the shipped c11_partial acyclicity axiom against brute force:
/// its verdict, evaluated through the model pipeline, must equal the
/// satisfiability of the seven explicit-order axioms (unguarded variant,
/// as in check_sc_elimination) decided by enumerating total orders. At
/// most 6 SC events (ResourceError otherwise).
bool check_partial_equivalence(const Execution& x, const Witness& w);

/// Aggregate result of a generate-and-check run.
struct OracleReport {
  std::uint64_t candidates = 0;
  std::uint64_t order_reduction_failures = 0;
  std::uint64_t sc_elimination_failures = 0;
  std::uint64_t sc_simplification_failures = 0;
  std::uint64_t partial_equivalence_failures = 0;
  double seconds = 0.0;

  std::uint64_t total_failures() const {
    return order_reduction_failures + sc_elimination_failures +
           sc_simplification_failures + partial_equivalence_failures;
  }
};

/// Runs all four checks on `count` candidates generated from consecutive
/// seeds first.seed, first.seed + 1, ... The probe relation handed to
/// check_order_reduction is drawn from a separate stream salted off the
/// candidate's seed, so generator changes never silently shift the probes.
/// Failures are counted, not thrown; any nonzero count is a defect.
OracleReport run_oracle(const RandomCandidateSpec& first, std::uint64_t count);

}  // namespace axmm::oracle

#endif  // AXMM_ORACLE_HPP
