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

#include "axmm/relalg.hpp"

#include <bit>

#include "axmm/errors.hpp"

namespace axmm {

namespace {

constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

// Mask selecting the valid bits of the last word of an n-bit row.
inline std::uint64_t tail_mask(std::size_t n) {
  const std::size_t rem = n % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// EventSet

EventSet::EventSet(std::size_t universe_size)
    : n_(universe_size), words_(words_for(universe_size), 0) {}

EventSet EventSet::full(std::size_t universe_size) {
  EventSet s(universe_size);
  if (universe_size == 0) return s;
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  s.words_.back() &= tail_mask(universe_size);
  return s;
}

void EventSet::check_universe(const EventSet& o) const {
  if (n_ != o.n_) throw StructuralError("EventSet universe mismatch");
}

void EventSet::insert(EventId e) {
  if (e >= n_) throw StructuralError("EventSet::insert out of universe");
  words_[e / kWordBits] |= std::uint64_t{1} << (e % kWordBits);
}

void EventSet::erase(EventId e) {
  if (e >= n_) throw StructuralError("EventSet::erase out of universe");
  words_[e / kWordBits] &= ~(std::uint64_t{1} << (e % kWordBits));
}

bool EventSet::contains(EventId e) const {
  if (e >= n_) return false;
  return (words_[e / kWordBits] >> (e % kWordBits)) & 1u;
}

std::size_t EventSet::size() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool EventSet::empty() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::vector<EventId> EventSet::elements() const {
  std::vector<EventId> out;
  out.reserve(size());
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    std::uint64_t w = words_[wi];
    while (w != 0) {
      const int b = std::countr_zero(w);
      out.push_back(static_cast<EventId>(wi * kWordBits + b));
      w &= w - 1;
    }
  }
  return out;
}

EventSet EventSet::operator|(const EventSet& o) const {
  check_universe(o);
  EventSet r(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
  return r;
}

EventSet EventSet::operator&(const EventSet& o) const {
  check_universe(o);
  EventSet r(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
  return r;
}

EventSet EventSet::operator-(const EventSet& o) const {
  check_universe(o);
  EventSet r(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
  return r;
}

EventSet EventSet::operator~() const {
  EventSet r(n_);
  if (n_ == 0) return r;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
  r.words_.back() &= tail_mask(n_);
  return r;
}

bool EventSet::operator==(const EventSet& o) const {
  return n_ == o.n_ && words_ == o.words_;
}

bool EventSet::subset_of(const EventSet& o) const {
  check_universe(o);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Relation

Relation::Relation(std::size_t universe_size)
    : n_(universe_size), wpr_(words_for(universe_size)), words_(n_ * wpr_, 0) {}

Relation Relation::full(std::size_t universe_size) {
  Relation r(universe_size);
  if (universe_size == 0) return r;
  const std::uint64_t tail = tail_mask(universe_size);
  for (std::size_t i = 0; i < r.n_; ++i) {
    auto* row = r.row(static_cast<EventId>(i));
    for (std::size_t w = 0; w < r.wpr_; ++w) row[w] = ~std::uint64_t{0};
    row[r.wpr_ - 1] &= tail;
  }
  return r;
}

Relation Relation::identity(std::size_t universe_size) {
  Relation r(universe_size);
  for (std::size_t i = 0; i < universe_size; ++i)
    r.insert(static_cast<EventId>(i), static_cast<EventId>(i));
  return r;
}

Relation Relation::identity_on(const EventSet& s) {
  Relation r(s.universe_size());
  for (std::size_t wi = 0; wi < s.words_.size(); ++wi) {
    std::uint64_t w = s.words_[wi];
    while (w != 0) {
      const int b = std::countr_zero(w);
      const auto e = static_cast<EventId>(wi * kWordBits + b);
      r.insert(e, e);
      w &= w - 1;
    }
  }
  return r;
}

Relation Relation::product(const EventSet& a, const EventSet& b) {
  if (a.universe_size() != b.universe_size())
    throw StructuralError("Relation::product universe mismatch");
  Relation r(a.universe_size());
  for (std::size_t wi = 0; wi < a.words_.size(); ++wi) {
    std::uint64_t w = a.words_[wi];
    while (w != 0) {
      const int bit = std::countr_zero(w);
      const auto e = static_cast<EventId>(wi * kWordBits + bit);
      auto* row = r.row(e);
      for (std::size_t k = 0; k < r.wpr_; ++k) row[k] = b.words_[k];
      w &= w - 1;
    }
  }
  return r;
}

Relation Relation::from_pairs(std::size_t universe_size,
                              const std::vector<std::pair<EventId, EventId>>& pairs) {
  Relation r(universe_size);
  for (const auto& [a, b] : pairs) r.insert(a, b);
  return r;
}

void Relation::check_universe(std::size_t other_n) const {
  if (n_ != other_n) throw StructuralError("Relation universe mismatch");
}

void Relation::insert(EventId a, EventId b) {
  if (a >= n_ || b >= n_) throw StructuralError("Relation::insert out of universe");
  row(a)[b / kWordBits] |= std::uint64_t{1} << (b % kWordBits);
}

void Relation::erase(EventId a, EventId b) {
  if (a >= n_ || b >= n_) throw StructuralError("Relation::erase out of universe");
  row(a)[b / kWordBits] &= ~(std::uint64_t{1} << (b % kWordBits));
}

bool Relation::contains(EventId a, EventId b) const {
  if (a >= n_ || b >= n_) return false;
  return (row(a)[b / kWordBits] >> (b % kWordBits)) & 1u;
}

std::size_t Relation::pair_count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Relation::is_empty() const {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::vector<std::pair<EventId, EventId>> Relation::pairs() const {
  std::vector<std::pair<EventId, EventId>> out;
  for (std::size_t i = 0; i < n_; ++i) {
    const auto* r = row(static_cast<EventId>(i));
    for (std::size_t wi = 0; wi < wpr_; ++wi) {
      std::uint64_t w = r[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        out.emplace_back(static_cast<EventId>(i),
                         static_cast<EventId>(wi * kWordBits + b));
        w &= w - 1;
      }
    }
  }
  return out;
}

EventSet Relation::successors(EventId e) const {
  EventSet s(n_);
  if (e >= n_) return s;
  const auto* r = row(e);
  for (std::size_t wi = 0; wi < wpr_; ++wi) s.words_[wi] = r[wi];
  return s;
}

Relation Relation::compose(const Relation& o) const {
  check_universe(o.n_);
  Relation out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto* ri = row(static_cast<EventId>(i));
    auto* oi = out.row(static_cast<EventId>(i));
    for (std::size_t wi = 0; wi < wpr_; ++wi) {
      std::uint64_t w = ri[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        const auto j = static_cast<EventId>(wi * kWordBits + b);
        const auto* rj = o.row(j);
        for (std::size_t k = 0; k < wpr_; ++k) oi[k] |= rj[k];
        w &= w - 1;
      }
    }
  }
  return out;
}

Relation Relation::inverse() const {
  Relation out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto* r = row(static_cast<EventId>(i));
    for (std::size_t wi = 0; wi < wpr_; ++wi) {
      std::uint64_t w = r[wi];
      while (w != 0) {
        const int b = std::countr_zero(w);
        out.insert(static_cast<EventId>(wi * kWordBits + b), static_cast<EventId>(i));
        w &= w - 1;
      }
    }
  }
  return out;
}

Relation Relation::refl_closure() const {
  Relation out = *this;
  for (std::size_t i = 0; i < n_; ++i)
    out.row(static_cast<EventId>(i))[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  return out;
}

Relation Relation::trans_closure() const {
  // Row-parallel Floyd-Warshall: if i reaches k, i also reaches row(k).
  Relation out = *this;
  for (std::size_t k = 0; k < n_; ++k) {
    const auto* rk = out.row(static_cast<EventId>(k));
    const std::uint64_t kbit = std::uint64_t{1} << (k % kWordBits);
    const std::size_t kw = k / kWordBits;
    for (std::size_t i = 0; i < n_; ++i) {
      auto* ri = out.row(static_cast<EventId>(i));
      if (ri[kw] & kbit) {
        if (i == k) continue;  // row(k) |= row(k) is a no-op
        for (std::size_t w = 0; w < wpr_; ++w) ri[w] |= rk[w];
      }
    }
  }
  return out;
}

Relation Relation::operator~() const {
  Relation out(n_);
  if (n_ == 0) return out;
  const std::uint64_t tail = tail_mask(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto* r = row(static_cast<EventId>(i));
    auto* o = out.row(static_cast<EventId>(i));
    for (std::size_t w = 0; w < wpr_; ++w) o[w] = ~r[w];
    o[wpr_ - 1] &= tail;
  }
  return out;
}

Relation Relation::operator|(const Relation& o) const {
  check_universe(o.n_);
  Relation out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] | o.words_[i];
  return out;
}

Relation Relation::operator&(const Relation& o) const {
  check_universe(o.n_);
  Relation out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & o.words_[i];
  return out;
}

Relation Relation::operator-(const Relation& o) const {
  check_universe(o.n_);
  Relation out(n_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & ~o.words_[i];
  return out;
}

bool Relation::operator==(const Relation& o) const {
  return n_ == o.n_ && words_ == o.words_;
}

bool Relation::subset_of(const Relation& o) const {
  check_universe(o.n_);
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

bool Relation::irreflexive() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (row(static_cast<EventId>(i))[i / kWordBits] & (std::uint64_t{1} << (i % kWordBits)))
      return false;
  return true;
}

bool Relation::acyclic() const { return trans_closure().irreflexive(); }

}  // namespace axmm
