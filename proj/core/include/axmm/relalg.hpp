/*
 * Copyright 2026 the axmm authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AXMM_RELALG_HPP_
#define AXMM_RELALG_HPP_

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace axmm {

/** Dense event identifier, unique within one execution. */
using EventId = std::uint32_t;

/**
 * Finite set of events over a fixed universe [0, n).
 *
 * Backed by a bit vector. All operations require both operands to share
 * the same universe size; complement is taken relative to the universe.
 * Instances are immutable in spirit: the checker never mutates a set that
 * is visible to another component, so sharing across threads is safe.
 */
class EventSet {
 public:
  EventSet() = default;
  explicit EventSet(std::size_t universe_size);

  /** The set containing every event of the universe. */
  static EventSet full(std::size_t universe_size);

  std::size_t universe_size() const { return n_; }

  void insert(EventId e);
  void erase(EventId e);
  bool contains(EventId e) const;
  std::size_t size() const;
  bool empty() const;

  /** Members in increasing id order. */
  std::vector<EventId> elements() const;

  EventSet operator|(const EventSet& o) const;
  EventSet operator&(const EventSet& o) const;
  EventSet operator-(const EventSet& o) const;
  /** Complement within the universe. */
  EventSet operator~() const;

  bool operator==(const EventSet& o) const;
  bool operator!=(const EventSet& o) const { return !(*this == o); }

  /** True iff this is a subset of o. */
  bool subset_of(const EventSet& o) const;

 private:
  void check_universe(const EventSet& o) const;

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;

  friend class Relation;
};

/**
 * Finite binary relation over a fixed universe [0, n).
 *
 * Backed by a bitset adjacency matrix, one row of ceil(n/64) words per
 * event. Complement is relative to the full square of the universe, which
 * matches per-execution evaluation of constraint expressions: the universe
 * is always the E of the current execution, never a global carrier.
 *
 * Transitive closure is well-defined for cyclic inputs (it is simply the
 * least transitive superset); acyclicity is irreflexivity of the closure.
 */
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t universe_size);

  static Relation full(std::size_t universe_size);
  static Relation identity(std::size_t universe_size);
  /** [s] = {(e,e) | e in s}. */
  static Relation identity_on(const EventSet& s);
  /** a x b, the set product. */
  static Relation product(const EventSet& a, const EventSet& b);
  static Relation from_pairs(std::size_t universe_size,
                             const std::vector<std::pair<EventId, EventId>>& pairs);

  std::size_t universe_size() const { return n_; }

  void insert(EventId a, EventId b);
  void erase(EventId a, EventId b);
  bool contains(EventId a, EventId b) const;
  std::size_t pair_count() const;
  bool is_empty() const;

  /** Pairs in row-major order, for tests and diagnostics. */
  std::vector<std::pair<EventId, EventId>> pairs() const;

  /** Successors of e as a set over the same universe. */
  EventSet successors(EventId e) const;

  /** Relational composition: (a,c) iff exists b with (a,b) and (b,c). */
  Relation compose(const Relation& o) const;
  Relation inverse() const;
  /** r? = r united with the identity. */
  Relation refl_closure() const;
  /** r+ = least transitive superset of r. */
  Relation trans_closure() const;
  /** Complement within universe x universe. */
  Relation operator~() const;

  Relation operator|(const Relation& o) const;
  Relation operator&(const Relation& o) const;
  Relation operator-(const Relation& o) const;

  bool operator==(const Relation& o) const;
  bool operator!=(const Relation& o) const { return !(*this == o); }

  bool subset_of(const Relation& o) const;

  bool irreflexive() const;
  bool acyclic() const;

 private:
  void check_universe(std::size_t other_n) const;
  std::uint64_t* row(EventId i) { return words_.data() + i * wpr_; }
  const std::uint64_t* row(EventId i) const { return words_.data() + i * wpr_; }

  std::size_t n_ = 0;
  std::size_t wpr_ = 0;  // words per row
  std::vector<std::uint64_t> words_;
};

// Free-function spellings of the three constraint predicates.
inline bool acyclic(const Relation& r) { return r.acyclic(); }
inline bool irreflexive(const Relation& r) { return r.irreflexive(); }
inline bool is_empty(const Relation& r) { return r.is_empty(); }

}  // namespace axmm

#endif  // AXMM_RELALG_HPP_
