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

#include "axmm/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "axmm/catdsl.hpp"
#include "axmm/errors.hpp"
#include "axmm/models.hpp"

namespace axmm::oracle {
namespace {

// Enumerating strict total orders costs |SC|! per check; 6 events (720
// orders) is the largest size that stays trivially cheap.
constexpr std::size_t kMaxEnumerableSc = 6;

// Density of the probe relation run_oracle feeds to check_order_reduction,
// in percent, and the salt separating its random stream from the
// generator's.
constexpr unsigned kProbeDensityPercent = 30;
constexpr std::uint64_t kProbeSalt = 0x9e3779b97f4a7c15ull;

std::uint64_t roll(std::mt19937_64& g, std::uint64_t k) { return g() % k; }

template <typename T>
const T& pick(std::mt19937_64& g, const std::vector<T>& xs) {
  return xs[roll(g, xs.size())];
}

// ---------------------------------------------------------------------------
// Candidate generation.

struct PlannedEvent {
  int thread = 0;
  EventKind kind = EventKind::F;
  int loc = -1;
  MemoryOrder ord = MemoryOrder::RLX;
  std::optional<Scope> scope;
};

const std::vector<MemoryOrder>& weak_orders() {
  static const std::vector<MemoryOrder> o = {MemoryOrder::RLX, MemoryOrder::ACQ,
                                             MemoryOrder::REL, MemoryOrder::AR};
  return o;
}

const std::vector<Scope>& all_scopes() {
  static const std::vector<Scope> s = {Scope::WI, Scope::WG, Scope::DV,
                                       Scope::ALL};
  return s;
}

// In-place Fisher-Yates; spelled out rather than std::shuffle so the
// resulting sequence depends only on the engine, not on the standard
// library's distribution internals.
template <typename T>
void shuffle_det(std::mt19937_64& g, std::vector<T>& xs) {
  for (std::size_t i = xs.size(); i > 1; --i) {
    std::swap(xs[i - 1], xs[roll(g, i)]);
  }
}

}  // namespace

Candidate gen_candidate(const RandomCandidateSpec& spec) {
  if (spec.max_events > 8) {
    throw StructuralError("gen_candidate: max_events is capped at 8");
  }
  if (spec.max_locations > 2) {
    throw StructuralError("gen_candidate: max_locations is capped at 2");
  }
  std::mt19937_64 g(spec.seed);

  if (spec.max_events == 0) {
    Candidate c{ExecutionBuilder({}, false).build(), Witness{}};
    if (!wf_candidate(c.x, c.w, false)) {
      throw StructuralError("gen_candidate: empty candidate not well-formed");
    }
    return c;
  }
  const unsigned nev = 1 + static_cast<unsigned>(roll(g, spec.max_events));
  const unsigned nlocs =
      spec.max_locations == 0
          ? 0
          : 1 + static_cast<unsigned>(roll(g, spec.max_locations));

  static const char* kLocNames[2] = {"x", "y"};
  static const std::vector<Region> kScopedRegions = {
      Region::Global, Region::Local, Region::GlobalFgb};
  std::vector<Location> locs;
  for (unsigned l = 0; l < nlocs; ++l) {
    Location loc;
    loc.name = kLocNames[l];
    loc.atomic = roll(g, 2) == 0;
    loc.region = spec.opencl ? pick(g, kScopedRegions) : Region::C11;
    locs.push_back(loc);
  }

  // Threads, each pinned to a (device, work-group) slot; slots are sorted so
  // the builder sees document order.
  const int nthreads = 1 + static_cast<int>(roll(g, 3));
  std::vector<int> path(nthreads, 0);  // device*4 + work-group
  if (spec.opencl) {
    for (int t = 0; t < nthreads; ++t) {
      path[t] = static_cast<int>(roll(g, 2)) * 4 + static_cast<int>(roll(g, 2));
    }
    std::sort(path.begin(), path.end());
  }

  std::vector<PlannedEvent> plan;
  for (unsigned i = 0; i < nev; ++i) {
    PlannedEvent e;
    e.thread = static_cast<int>(roll(g, nthreads));
    const bool fence = nlocs == 0 || roll(g, 10) == 9;
    const bool sc = roll(g, 100) < spec.sc_bias_percent;
    if (fence) {
      if (spec.opencl) {
        static const std::vector<EventKind> kScopedFences = {
            EventKind::FG, EventKind::FL, EventKind::FGL};
        e.kind = pick(g, kScopedFences);
        e.scope = pick(g, all_scopes());
      } else {
        e.kind = EventKind::F;
      }
      e.ord = sc ? MemoryOrder::SC : pick(g, weak_orders());
    } else {
      e.loc = static_cast<int>(roll(g, nlocs));
      if (!locs[e.loc].atomic) {
        e.kind = roll(g, 2) == 0 ? EventKind::Wna : EventKind::Rna;
      } else {
        const std::uint64_t k = roll(g, 10);
        e.kind = k < 4 ? EventKind::W : k < 8 ? EventKind::R : EventKind::RMW;
        e.ord = sc ? MemoryOrder::SC : pick(g, weak_orders());
        if (spec.opencl) e.scope = pick(g, all_scopes());
      }
    }
    plan.push_back(e);
  }

  // Demote excess SC events, latest first, so the factorial-cost checks stay
  // within budget regardless of how the bias played out.
  unsigned sc_count = 0;
  for (const PlannedEvent& e : plan) {
    if (e.ord == MemoryOrder::SC && e.kind != EventKind::Wna &&
        e.kind != EventKind::Rna) {
      ++sc_count;
    }
  }
  for (std::size_t i = plan.size(); i-- > 0 && sc_count > spec.max_sc_events;) {
    if (plan[i].ord == MemoryOrder::SC && plan[i].kind != EventKind::Wna &&
        plan[i].kind != EventKind::Rna) {
      plan[i].ord = pick(g, weak_orders());
      --sc_count;
    }
  }

  // Local-region locations must be touched by one work-group only: pick an
  // owning slot per such location and re-home its accesses there.
  for (unsigned l = 0; l < nlocs; ++l) {
    if (locs[l].region != Region::Local) continue;
    const int owner = path[roll(g, nthreads)];
    std::vector<int> owners;
    for (int t = 0; t < nthreads; ++t) {
      if (path[t] == owner) owners.push_back(t);
    }
    for (PlannedEvent& e : plan) {
      if (e.loc == static_cast<int>(l)) {
        e.thread = owners[roll(g, owners.size())];
      }
    }
  }

  // Values: writes draw from {0,1} (initial writes hold 0); every read then
  // observes a uniformly chosen same-location write other than itself, which
  // fixes its read value. The initial write keeps every pool non-empty.
  struct WriteRef {
    int plan_idx;  // -1 for the initial write
    std::int64_t val;
  };
  std::vector<std::vector<WriteRef>> writes(nlocs);
  for (unsigned l = 0; l < nlocs; ++l) writes[l].push_back({-1, 0});
  std::vector<std::int64_t> wval(plan.size(), 0), rval(plan.size(), 0);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlannedEvent& e = plan[i];
    if (e.kind == EventKind::W || e.kind == EventKind::Wna ||
        e.kind == EventKind::RMW) {
      wval[i] = static_cast<std::int64_t>(roll(g, 2));
      writes[e.loc].push_back({static_cast<int>(i), wval[i]});
    }
  }
  std::vector<int> rf_src(plan.size(), -1);  // index into writes[loc]
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const PlannedEvent& e = plan[i];
    if (e.kind != EventKind::R && e.kind != EventKind::Rna &&
        e.kind != EventKind::RMW) {
      continue;
    }
    std::vector<int> pool;
    for (int wi = 0; wi < static_cast<int>(writes[e.loc].size()); ++wi) {
      if (writes[e.loc][wi].plan_idx != static_cast<int>(i)) pool.push_back(wi);
    }
    rf_src[i] = pool[roll(g, pool.size())];
    rval[i] = writes[e.loc][rf_src[i]].val;
  }

  // Assemble: initial writes, then threads grouped by their sorted slots.
  ExecutionBuilder b(locs, spec.opencl);
  for (unsigned l = 0; l < nlocs; ++l) b.init(locs[l].name, 0);
  std::vector<EventId> plan_id(plan.size());
  int cur_dev = -1, cur_wg = -1;
  for (int t = 0; t < nthreads; ++t) {
    if (spec.opencl) {
      const int dev = path[t] / 4, wg = path[t] % 4;
      if (dev != cur_dev) {
        b.begin_device();
        cur_dev = dev;
        cur_wg = -1;
      }
      if (wg != cur_wg) {
        b.begin_workgroup();
        cur_wg = wg;
      }
    }
    b.begin_thread();
    for (std::size_t i = 0; i < plan.size(); ++i) {
      if (plan[i].thread != t) continue;
      const PlannedEvent& e = plan[i];
      Label l;
      switch (e.kind) {
        case EventKind::Wna: l = Label::mk_wna(e.loc, wval[i]); break;
        case EventKind::W: l = Label::mk_w(e.loc, wval[i], e.ord, e.scope); break;
        case EventKind::Rna: l = Label::mk_rna(e.loc, rval[i]); break;
        case EventKind::R: l = Label::mk_r(e.loc, rval[i], e.ord, e.scope); break;
        case EventKind::RMW:
          l = Label::mk_rmw(e.loc, rval[i], wval[i], e.ord, e.scope);
          break;
        case EventKind::F: l = Label::mk_f(e.ord); break;
        case EventKind::FG: l = Label::mk_fg(e.ord, *e.scope); break;
        case EventKind::FL: l = Label::mk_fl(e.ord, *e.scope); break;
        case EventKind::FGL: l = Label::mk_fgl(e.ord, *e.scope); break;
      }
      plan_id[i] = b.push(l);
    }
  }

  Candidate c;
  c.x = b.build();
  c.w.rf = Relation(c.x.n);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (rf_src[i] < 0) continue;
    const WriteRef& w = writes[plan[i].loc][rf_src[i]];
    const EventId src = w.plan_idx < 0 ? static_cast<EventId>(plan[i].loc)
                                       : plan_id[w.plan_idx];
    c.w.rf.insert(src, plan_id[i]);
  }
  c.w.mo = Relation(c.x.n);
  for (unsigned l = 0; l < nlocs; ++l) {
    if (!locs[l].atomic) continue;
    std::vector<EventId> order;
    for (const WriteRef& w : writes[l]) {
      order.push_back(w.plan_idx < 0 ? static_cast<EventId>(l)
                                     : plan_id[w.plan_idx]);
    }
    shuffle_det(g, order);
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        c.w.mo.insert(order[i], order[j]);
      }
    }
  }

  if (!wf_candidate(c.x, c.w, false)) {
    throw StructuralError("gen_candidate: generated a non-well-formed candidate");
  }
  return c;
}

namespace {

// ---------------------------------------------------------------------------
// The equivalence checks.

std::vector<EventId> sc_events(const Execution& x) {
  std::vector<EventId> sc;
  for (EventId e = 0; e < x.n; ++e) {
    if (x.lbl[e].is_atomic() && x.lbl[e].ord == MemoryOrder::SC) sc.push_back(e);
  }
  return sc;
}

void require_wf(const Execution& x, const Witness& w) {
  if (!wf_candidate(x, w, false)) {
    throw StructuralError(
        "the reduction checks need a well-formed candidate with no SC order");
  }
}

void require_enumerable(const std::vector<EventId>& sc) {
  if (sc.size() > kMaxEnumerableSc) {
    throw ResourceError("enumerating total orders over " +
                        std::to_string(sc.size()) +
                        " SC events exceeds the budget (at most " +
                        std::to_string(kMaxEnumerableSc) + ")");
  }
}

// Distinct SC pairs: the square of the SC events minus the diagonal.
Relation sc_square(const Execution& x, const std::vector<EventId>& sc) {
  EventSet s(x.n);
  for (EventId e : sc) s.insert(e);
  return Relation::product(s, s) - Relation::identity(x.n);
}

// Whether the total order listing ids in position order keeps S;rel
// irreflexive for every rel: no edge may point from a later position back
// to an earlier one.
bool order_satisfies(const std::vector<EventId>& perm,
                     const std::vector<const Relation*>& rels) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      for (const Relation* rel : rels) {
        if (rel->contains(perm[j], perm[i])) return false;
      }
    }
  }
  return true;
}

// Whether any strict total order over `ids` satisfies every relation, by
// plain enumeration of all |ids|! permutations.
bool exists_order(std::vector<EventId> ids,
                  const std::vector<const Relation*>& rels) {
  std::sort(ids.begin(), ids.end());
  do {
    if (order_satisfies(ids, rels)) return true;
  } while (std::next_permutation(ids.begin(), ids.end()));
  return false;
}

// Independent existence route: repeatedly peel off a node with no incoming
// r-edge from the rest. Self-loops are ignored, matching the diagonal
// subtraction on the acyclicity side.
bool topo_order_exists(const std::vector<EventId>& ids, const Relation& r) {
  std::vector<EventId> rem = ids;
  while (!rem.empty()) {
    std::size_t found = rem.size();
    for (std::size_t i = 0; i < rem.size() && found == rem.size(); ++i) {
      bool has_in = false;
      for (std::size_t j = 0; j < rem.size(); ++j) {
        if (i != j && r.contains(rem[j], rem[i])) {
          has_in = true;
          break;
        }
      }
      if (!has_in) found = i;
    }
    if (found == rem.size()) return false;
    rem.erase(rem.begin() + static_cast<std::ptrdiff_t>(found));
  }
  return true;
}

const cat::ModelDef& partial_model() {
  static const cat::ModelDef m = models::get_model("c11_partial");
  return m;
}

const cat::ModelDef& simp_model() {
  static const cat::ModelDef m = models::get_model("c11_simp");
  return m;
}

const Relation& rel_of(const Env& env, std::string_view name) {
  const auto it = env.find(name);
  if (it == env.end() || !std::holds_alternative<Relation>(it->second)) {
    throw StructuralError("oracle: model binding '" + std::string(name) +
                          "' missing or not a relation");
  }
  return std::get<Relation>(it->second);
}

const EventSet& set_of(const Env& env, std::string_view name) {
  const auto it = env.find(name);
  if (it == env.end() || !std::holds_alternative<EventSet>(it->second)) {
    throw StructuralError("oracle: model binding '" + std::string(name) +
                          "' missing or not a set");
  }
  return std::get<EventSet>(it->second);
}

// The base environment extended with the partial model's bindings, which
// include everything the edge families are built from.
Env candidate_env(const Execution& x, const Witness& w) {
  return cat::eval_bindings(partial_model(), base_env(x, w));
}

// The seven edge families the explicit-order axioms pin, assembled here
// with relational operations rather than through the model evaluator. The
// from-read-through-SC family is the third; `strengthen_fr` replaces it
// with plain from-read.
std::vector<Relation> edge_families(const Env& env, bool strengthen_fr) {
  const Relation& hb = rel_of(env, "hb");
  const Relation& fr = rel_of(env, "fr");
  const Relation& mo = rel_of(env, "mo");
  const Relation& rf = rel_of(env, "rf");
  const Relation& hbl = rel_of(env, "hbl");
  const Relation fsb_opt = rel_of(env, "Fsb").refl_closure();
  const Relation sbf_opt = rel_of(env, "sbF").refl_closure();
  const Relation& fsb = rel_of(env, "Fsb");
  const Relation& sbf = rel_of(env, "sbF");
  const Relation sc_id = Relation::identity_on(set_of(env, "SC"));
  const Relation w_id = Relation::identity_on(set_of(env, "W"));

  std::vector<Relation> fam;
  fam.push_back(hb);
  fam.push_back(fsb_opt.compose(mo).compose(sbf_opt));
  fam.push_back(strengthen_fr ? fr : rf.inverse().compose(sc_id).compose(mo));
  fam.push_back(rf.inverse().compose(hbl).compose(w_id));
  fam.push_back(fsb.compose(fr));
  fam.push_back(fr.compose(sbf));
  fam.push_back(fsb.compose(fr).compose(sbf));
  return fam;
}

Relation union_of(const std::vector<Relation>& fam, std::size_t n) {
  Relation u(n);
  for (const Relation& f : fam) u = u | f;
  return u;
}

std::vector<const Relation*> pointers_to(const std::vector<Relation>& fam) {
  std::vector<const Relation*> ps;
  for (const Relation& f : fam) ps.push_back(&f);
  return ps;
}

// Every consistency constraint of the partial model except its SC axiom:
// the ground both sides of the simplification share.
bool shared_axioms_hold(const Env& env) {
  for (const cat::Constraint& c : partial_model().constraints) {
    if (c.undefined_behaviour || c.name == "Spartial") continue;
    if (!cat::constraint_holds(c, env)) return false;
  }
  return true;
}

}  // namespace

bool check_order_reduction(const Execution& x, const Witness& w,
                           const Relation& r) {
  require_wf(x, w);
  if (r.universe_size() != x.n) {
    throw StructuralError(
        "check_order_reduction: the probe relation must share the "
        "execution's universe");
  }
  const std::vector<EventId> sc = sc_events(x);
  require_enumerable(sc);

  const bool by_enumeration = exists_order(sc, {&r});
  const bool by_acyclicity = (sc_square(x, sc) & r).acyclic();
  const bool by_topo_sort = topo_order_exists(sc, r);
  return by_enumeration == by_acyclicity && by_topo_sort == by_enumeration;
}

bool check_sc_elimination(const Execution& x, const Witness& w) {
  require_wf(x, w);
  const std::vector<EventId> sc = sc_events(x);
  require_enumerable(sc);

  const Env env = candidate_env(x, w);
  const std::vector<Relation> fam = edge_families(env, false);
  const bool by_enumeration = exists_order(sc, pointers_to(fam));
  const bool by_acyclicity = (sc_square(x, sc) & union_of(fam, x.n)).acyclic();
  return by_enumeration == by_acyclicity;
}

bool check_sc_simplification(const Execution& x, const Witness& w) {
  require_wf(x, w);
  const std::vector<EventId> sc = sc_events(x);

  const Env env = candidate_env(x, w);
  const bool shared = shared_axioms_hold(env);
  const std::vector<Relation> fam = edge_families(env, true);
  const bool strengthened_partial =
      shared && (sc_square(x, sc) & union_of(fam, x.n)).acyclic();
  const bool folded = cat::eval_model(simp_model(), x, w).consistent;
  return strengthened_partial == folded;
}

bool check_partial_equivalence(const Execution& x, const Witness& w) {
  require_wf(x, w);
  const std::vector<EventId> sc = sc_events(x);
  require_enumerable(sc);

  const Env env = candidate_env(x, w);
  const cat::Constraint* partial_axiom = nullptr;
  for (const cat::Constraint& c : partial_model().constraints) {
    if (c.name == "Spartial") partial_axiom = &c;
  }
  if (partial_axiom == nullptr) {
    throw StructuralError("oracle: the partial model lost its SC axiom");
  }
  const bool shipped = cat::constraint_holds(*partial_axiom, env);
  const std::vector<Relation> fam = edge_families(env, false);
  const bool brute = exists_order(sc, pointers_to(fam));
  return shipped == brute;
}

OracleReport run_oracle(const RandomCandidateSpec& first, std::uint64_t count) {
  OracleReport rep;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < count; ++i) {
    RandomCandidateSpec spec = first;
    spec.seed = first.seed + i;
    const Candidate c = gen_candidate(spec);

    std::mt19937_64 pg(spec.seed ^ kProbeSalt);
    Relation probe(c.x.n);
    for (EventId a = 0; a < c.x.n; ++a) {
      for (EventId b = 0; b < c.x.n; ++b) {
        if (roll(pg, 100) < kProbeDensityPercent) probe.insert(a, b);
      }
    }

    ++rep.candidates;
    if (!check_order_reduction(c.x, c.w, probe)) ++rep.order_reduction_failures;
    if (!check_sc_elimination(c.x, c.w)) ++rep.sc_elimination_failures;
    if (!check_sc_simplification(c.x, c.w)) ++rep.sc_simplification_failures;
    if (!check_partial_equivalence(c.x, c.w)) {
      ++rep.partial_equivalence_failures;
    }
  }
  rep.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace axmm::oracle
