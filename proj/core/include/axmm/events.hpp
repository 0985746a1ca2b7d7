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

#ifndef AXMM_EVENTS_HPP
#define AXMM_EVENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "axmm/relalg.hpp"

namespace axmm {

/// Memory order of an atomic operation or fence.
enum class MemoryOrder : std::uint8_t { RLX, ACQ, REL, AR, SC };

/// Memory scope of an atomic operation or fence in a scoped (OpenCL-style)
/// program. WI (work-item) is an extension used to encode non-atomics as
/// thread-private atomics; it is accepted by the litmus frontend only when
/// explicitly enabled.
enum class Scope : std::uint8_t { WI, WG, DV, ALL };

/// Memory region a location lives in. C11 marks a region-free location
/// belonging to a plain (unscoped) program; the other three are the scoped
/// regions. Region and scope attributes must be used consistently within one
/// execution: either every location is C11 and no event carries a scope, or
/// no location is C11 and every atomic event carries one.
enum class Region : std::uint8_t { Global, Local, GlobalFgb, C11 };

/// Event kinds. Wna/Rna are non-atomic accesses; W/R/RMW are atomic; F is an
/// unscoped fence; FG/FL/FGL are fences on global, local, and both memories.
enum class EventKind : std::uint8_t { Wna, W, Rna, R, RMW, F, FG, FL, FGL };

const char* to_string(MemoryOrder o);
const char* to_string(Scope s);
const char* to_string(Region r);
const char* to_string(EventKind k);

/// A memory location: a name, an atomicity flag, and a region.
struct Location {
  std::string name;
  bool atomic = false;
  Region region = Region::C11;
};

/// An event label. Which attributes are present depends on the kind:
///
///   kind   loc  rval  wval  ord  scope
///   Wna     x          x
///   W       x          x     x    (scoped mode)
///   Rna     x    x
///   R       x    x           x    (scoped mode)
///   RMW     x    x     x     x    (scoped mode)
///   F                        x
///   FG/FL/FGL                x    (scoped mode)
///
/// `loc` is an index into Execution::locations, or -1 for fences. Scope is
/// present exactly on atomic events of scoped executions.
struct Label {
  EventKind kind = EventKind::Wna;
  std::int32_t loc = -1;
  std::optional<std::int64_t> rval;
  std::optional<std::int64_t> wval;
  std::optional<MemoryOrder> ord;
  std::optional<Scope> scope;

  bool is_read() const {
    return kind == EventKind::Rna || kind == EventKind::R ||
           kind == EventKind::RMW;
  }
  bool is_write() const {
    return kind == EventKind::Wna || kind == EventKind::W ||
           kind == EventKind::RMW;
  }
  bool is_fence() const {
    return kind == EventKind::F || kind == EventKind::FG ||
           kind == EventKind::FL || kind == EventKind::FGL;
  }
  /// Atomic events are everything except the two non-atomic access kinds.
  bool is_atomic() const {
    return kind != EventKind::Wna && kind != EventKind::Rna;
  }

  bool operator==(const Label&) const = default;

  // Factories for the nine kinds, used by tests and pinned executions.
  static Label mk_wna(std::int32_t loc, std::int64_t v);
  static Label mk_w(std::int32_t loc, std::int64_t v, MemoryOrder o,
                    std::optional<Scope> s = std::nullopt);
  static Label mk_rna(std::int32_t loc, std::int64_t v);
  static Label mk_r(std::int32_t loc, std::int64_t v, MemoryOrder o,
                    std::optional<Scope> s = std::nullopt);
  static Label mk_rmw(std::int32_t loc, std::int64_t rv, std::int64_t wv,
                      MemoryOrder o, std::optional<Scope> s = std::nullopt);
  static Label mk_f(MemoryOrder o);
  static Label mk_fg(MemoryOrder o, Scope s);
  static Label mk_fl(MemoryOrder o, Scope s);
  static Label mk_fgl(MemoryOrder o, Scope s);
};

/// An execution: the program-derived half of a candidate. Events are ids
/// 0..n-1; `I` marks the initial writes, which precede all thread events in
/// the id order by construction. thd, wg and dv are equivalence relations on
/// the non-initial events with thd subset wg subset dv; sb is a strict
/// partial order inside thd, total within each thread.
///
/// Immutable once built; treat as value type.
struct Execution {
  std::vector<Location> locations;
  std::uint32_t n = 0;
  EventSet I{0};
  std::vector<Label> lbl;
  Relation thd{0};
  Relation wg{0};
  Relation dv{0};
  Relation sb{0};

  /// True when the execution uses scoped regions (any location's region is
  /// not C11, or any fence is FG/FL/FGL). An execution with no locations and
  /// no fences counts as unscoped.
  bool scoped() const;
};

/// The guessed half of a candidate: reads-from, modification order, and the
/// optional total order over SC events demanded by witness-style models.
struct Witness {
  Relation rf{0};
  Relation mo{0};
  std::optional<Relation> S;
};

/// Structural validity of an execution (not a candidate): label attribute
/// presence per kind, initial-write shape (one non-atomic initial write per
/// accessed location), equivalence-relation and ordering invariants on
/// thd/wg/dv/sb, region/scope mode consistency, atomic accesses only at
/// atomic locations, and work-group confinement of local-region accesses.
/// Returns an empty string when valid, else a description of the first
/// violation found.
std::string validate_execution(const Execution& x);

/// Candidate well-formedness. Checks, in order:
///   (a) every read has exactly one rf predecessor, and rf only relates a
///       write to a same-location read of the written value;
///   (b) mo, together with its inverse, relates exactly the distinct pairs
///       of same-location writes at atomic locations, and mo is acyclic;
///   (c) with needs_S: S is present, acyclic, and together with its inverse
///       relates exactly the distinct pairs of SC events; without needs_S:
///       S is absent.
/// Returns the conjunction. Throws StructuralError if the witness relations
/// do not share the execution's universe.
bool wf_candidate(const Execution& x, const Witness& w, bool needs_S);

/// A model-visible value: either a set of events or a binary relation.
using Value = std::variant<EventSet, Relation>;

/// Named sets and relations a model text can reference.
using Env = std::map<std::string, Value, std::less<>>;

/// The base environment handed to model evaluation. Binds:
///   relations: E2 (full square), id, loc (same-location, non-fence, with
///              diagonal), val (write-to-read, written value equals read
///              value), sb, thd, wg, dv, rf, mo, and S when present;
///   sets:      R, W, F, A, I, RLX, ACQ, REL, AR, SC, WI, WG, DV, ALL,
///              nal (non-atomic-location accesses), G, L, fgb.
/// In unscoped executions the scope sets are empty, G is every non-fence
/// access, and L and fgb are empty.
Env base_env(const Execution& x, const Witness& w);

/// The execution-dependent part of base_env: everything except rf/mo/S.
/// base_env(x, w) equals execution_env(x) plus bind_witness. Split out so a
/// caller enumerating many witnesses of one execution can reuse the stable
/// part.
Env execution_env(const Execution& x);

/// Adds rf, mo, and S (when present) to an environment produced by
/// execution_env.
void bind_witness(Env& env, const Witness& w);

/// Incremental construction of executions in litmus shape: initial writes
/// first, then devices, work-groups, and threads in document order. Event
/// ids are assigned in call order, so initial writes occupy the lowest ids
/// and each thread's events are contiguous and program-ordered.
///
/// In unscoped mode, begin_device/begin_workgroup must not be called;
/// begin_thread alone lays all threads in one implicit group, and wg and dv
/// come out as the full square on non-initial events.
class ExecutionBuilder {
 public:
  /// `scoped` selects the region/scope discipline builds are checked
  /// against; it must match the regions of `locs`.
  ExecutionBuilder(std::vector<Location> locs, bool scoped);

  /// Index of a declared location. Throws StructuralError on unknown names.
  std::int32_t loc_index(std::string_view name) const;

  /// Appends the initial write of `loc` with value `v`. Must precede all
  /// begin_* calls; one per location at most.
  EventId init(std::string_view loc, std::int64_t v);

  void begin_device();
  void begin_workgroup();
  void begin_thread();

  /// Appends an event to the current thread.
  EventId push(const Label& l);

  /// Finishes construction and validates the result. Throws StructuralError
  /// if validate_execution rejects it.
  Execution build() const;

 private:
  std::vector<Location> locations_;
  bool scoped_ = false;
  bool threads_started_ = false;
  std::vector<Label> labels_;
  std::vector<EventId> inits_;
  // Per non-initial event: which thread, work-group, and device it sits in.
  std::vector<std::uint32_t> ev_thread_, ev_wg_, ev_dv_;
  std::int32_t cur_thread_ = -1, cur_wg_ = -1, cur_dv_ = -1;
};

}  // namespace axmm

#endif  // AXMM_EVENTS_HPP
