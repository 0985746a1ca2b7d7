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

#include "axmm/events.hpp"

#include <algorithm>
#include <sstream>

#include "axmm/errors.hpp"

namespace axmm {

const char* to_string(MemoryOrder o) {
  switch (o) {
    case MemoryOrder::RLX: return "rlx";
    case MemoryOrder::ACQ: return "acq";
    case MemoryOrder::REL: return "rel";
    case MemoryOrder::AR: return "ar";
    case MemoryOrder::SC: return "sc";
  }
  return "?";
}

const char* to_string(Scope s) {
  switch (s) {
    case Scope::WI: return "wi";
    case Scope::WG: return "wg";
    case Scope::DV: return "dv";
    case Scope::ALL: return "all";
  }
  return "?";
}

const char* to_string(Region r) {
  switch (r) {
    case Region::Global: return "global";
    case Region::Local: return "local";
    case Region::GlobalFgb: return "global_fgb";
    case Region::C11: return "c11";
  }
  return "?";
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Wna: return "Wna";
    case EventKind::W: return "W";
    case EventKind::Rna: return "Rna";
    case EventKind::R: return "R";
    case EventKind::RMW: return "RMW";
    case EventKind::F: return "F";
    case EventKind::FG: return "FG";
    case EventKind::FL: return "FL";
    case EventKind::FGL: return "FGL";
  }
  return "?";
}

Label Label::mk_wna(std::int32_t loc, std::int64_t v) {
  Label l;
  l.kind = EventKind::Wna;
  l.loc = loc;
  l.wval = v;
  return l;
}

Label Label::mk_w(std::int32_t loc, std::int64_t v, MemoryOrder o,
                  std::optional<Scope> s) {
  Label l;
  l.kind = EventKind::W;
  l.loc = loc;
  l.wval = v;
  l.ord = o;
  l.scope = s;
  return l;
}

Label Label::mk_rna(std::int32_t loc, std::int64_t v) {
  Label l;
  l.kind = EventKind::Rna;
  l.loc = loc;
  l.rval = v;
  return l;
}

Label Label::mk_r(std::int32_t loc, std::int64_t v, MemoryOrder o,
                  std::optional<Scope> s) {
  Label l;
  l.kind = EventKind::R;
  l.loc = loc;
  l.rval = v;
  l.ord = o;
  l.scope = s;
  return l;
}

Label Label::mk_rmw(std::int32_t loc, std::int64_t rv, std::int64_t wv,
                    MemoryOrder o, std::optional<Scope> s) {
  Label l;
  l.kind = EventKind::RMW;
  l.loc = loc;
  l.rval = rv;
  l.wval = wv;
  l.ord = o;
  l.scope = s;
  return l;
}

Label Label::mk_f(MemoryOrder o) {
  Label l;
  l.kind = EventKind::F;
  l.ord = o;
  return l;
}

Label Label::mk_fg(MemoryOrder o, Scope s) {
  Label l;
  l.kind = EventKind::FG;
  l.ord = o;
  l.scope = s;
  return l;
}

Label Label::mk_fl(MemoryOrder o, Scope s) {
  Label l;
  l.kind = EventKind::FL;
  l.ord = o;
  l.scope = s;
  return l;
}

Label Label::mk_fgl(MemoryOrder o, Scope s) {
  Label l;
  l.kind = EventKind::FGL;
  l.ord = o;
  l.scope = s;
  return l;
}

bool Execution::scoped() const {
  for (const Location& l : locations) {
    if (l.region != Region::C11) return true;
  }
  for (const Label& l : lbl) {
    if (l.kind == EventKind::FG || l.kind == EventKind::FL ||
        l.kind == EventKind::FGL) {
      return true;
    }
  }
  return false;
}

namespace {

// Sets of events by role, shared by validation, well-formedness and the
// base environment.
struct Roles {
  EventSet R, W, F, A, nal;
  Relation eqloc, eqval;
};

Roles roles_of(const Execution& x) {
  const std::uint32_t n = x.n;
  Roles r{EventSet(n), EventSet(n), EventSet(n), EventSet(n), EventSet(n),
          Relation(n), Relation(n)};
  for (std::uint32_t e = 0; e < n; ++e) {
    const Label& l = x.lbl[e];
    if (l.is_read()) r.R.insert(e);
    if (l.is_write()) r.W.insert(e);
    if (l.is_fence()) r.F.insert(e);
    if (l.is_atomic()) r.A.insert(e);
    if (!l.is_fence() && l.loc >= 0 &&
        static_cast<std::size_t>(l.loc) < x.locations.size() &&
        !x.locations[l.loc].atomic) {
      r.nal.insert(e);
    }
  }
  // Same-location pairs of non-fence events, diagonal included. The written
  // value of a write equals the read value of a read; a pair of RMWs can be
  // related in both directions with different witnesses.
  for (std::uint32_t a = 0; a < n; ++a) {
    const Label& la = x.lbl[a];
    if (la.is_fence()) continue;
    for (std::uint32_t b = 0; b < n; ++b) {
      const Label& lb = x.lbl[b];
      if (lb.is_fence()) continue;
      if (la.loc == lb.loc) r.eqloc.insert(a, b);
      if (la.is_write() && lb.is_read() && la.wval && lb.rval &&
          *la.wval == *lb.rval) {
        r.eqval.insert(a, b);
      }
    }
  }
  return r;
}

bool is_equivalence_on(const Relation& r, const EventSet& dom) {
  if (!(r - Relation::product(dom, dom)).is_empty()) return false;
  for (EventId e : dom.elements()) {
    if (!r.contains(e, e)) return false;
  }
  if (r != r.inverse()) return false;
  return r.compose(r).subset_of(r);
}

std::string check_relation_universes(const Execution& x) {
  if (x.I.universe_size() != x.n) return "initial-event set universe mismatch";
  for (const Relation* r : {&x.thd, &x.wg, &x.dv, &x.sb}) {
    if (r->universe_size() != x.n) return "structure relation universe mismatch";
  }
  return "";
}

}  // namespace

std::string validate_execution(const Execution& x) {
  const std::uint32_t n = x.n;
  if (x.lbl.size() != n) return "label count differs from event count";
  if (std::string err = check_relation_universes(x); !err.empty()) return err;

  const bool scoped = x.scoped();
  if (scoped) {
    for (const Location& l : x.locations) {
      if (l.region == Region::C11) {
        return "location '" + l.name + "' is region-free in a scoped execution";
      }
    }
  }

  auto describe = [](std::uint32_t e) {
    return "event " + std::to_string(e);
  };

  std::vector<std::int32_t> init_of(x.locations.size(), -1);
  for (std::uint32_t e = 0; e < n; ++e) {
    const Label& l = x.lbl[e];
    const bool is_init = x.I.contains(e);
    if (l.is_fence()) {
      if (is_init) return describe(e) + ": initial event is a fence";
      if (l.loc != -1 || l.rval || l.wval) {
        return describe(e) + ": fence carries access attributes";
      }
      if (!l.ord) return describe(e) + ": fence lacks a memory order";
      const bool scoped_kind = l.kind != EventKind::F;
      if (scoped_kind != scoped) {
        return describe(e) + ": fence kind disagrees with execution mode";
      }
      if (scoped_kind != l.scope.has_value()) {
        return describe(e) + ": fence scope presence disagrees with its kind";
      }
      continue;
    }
    if (l.loc < 0 || static_cast<std::size_t>(l.loc) >= x.locations.size()) {
      return describe(e) + ": location index out of range";
    }
    const Location& loc = x.locations[l.loc];
    if (l.is_read() != l.rval.has_value()) {
      return describe(e) + ": read-value presence disagrees with kind";
    }
    if (l.is_write() != l.wval.has_value()) {
      return describe(e) + ": write-value presence disagrees with kind";
    }
    if (l.is_atomic()) {
      if (!l.ord) return describe(e) + ": atomic access lacks a memory order";
      if (l.scope.has_value() != scoped) {
        return describe(e) + ": scope presence disagrees with execution mode";
      }
      if (!loc.atomic) {
        return describe(e) + ": atomic access to non-atomic location '" +
               loc.name + "'";
      }
    } else if (l.ord || l.scope) {
      return describe(e) + ": non-atomic access carries order or scope";
    }
    if (is_init) {
      if (l.kind != EventKind::Wna) {
        return describe(e) + ": initial event is not a non-atomic write";
      }
      if (init_of[l.loc] >= 0) {
        return "two initial writes for location '" + loc.name + "'";
      }
      init_of[l.loc] = static_cast<std::int32_t>(e);
    }
  }
  for (std::uint32_t e = 0; e < n; ++e) {
    const Label& l = x.lbl[e];
    if (x.I.contains(e) || l.is_fence()) continue;
    if (init_of[l.loc] < 0) {
      return "location '" + x.locations[l.loc].name + "' accessed without an "
             "initial write";
    }
  }

  EventSet non_init = EventSet::full(n) - x.I;
  if (!is_equivalence_on(x.thd, non_init)) {
    return "thd is not an equivalence on non-initial events";
  }
  if (!is_equivalence_on(x.wg, non_init)) {
    return "wg is not an equivalence on non-initial events";
  }
  if (!is_equivalence_on(x.dv, non_init)) {
    return "dv is not an equivalence on non-initial events";
  }
  if (!x.thd.subset_of(x.wg) || !x.wg.subset_of(x.dv)) {
    return "thread/work-group/device nesting violated";
  }
  if (!x.sb.subset_of(x.thd)) return "sb leaves thread boundaries";
  if (!x.sb.irreflexive()) return "sb is reflexive";
  if (!x.sb.compose(x.sb).subset_of(x.sb)) return "sb is not transitive";

  // Local-region accesses are confined to one work-group (initial writes,
  // which belong to no work-group, are exempt).
  for (std::uint32_t a = 0; a < n; ++a) {
    const Label& la = x.lbl[a];
    if (la.is_fence() || x.I.contains(a)) continue;
    if (x.locations[la.loc].region != Region::Local) continue;
    for (std::uint32_t b = a + 1; b < n; ++b) {
      const Label& lb = x.lbl[b];
      if (lb.is_fence() || x.I.contains(b)) continue;
      if (lb.loc != la.loc) continue;
      if (!x.wg.contains(a, b)) {
        return "local location '" + x.locations[la.loc].name +
               "' accessed from two work-groups";
      }
    }
  }
  return "";
}

bool wf_candidate(const Execution& x, const Witness& w, bool needs_S) {
  const std::uint32_t n = x.n;
  if (w.rf.universe_size() != n || w.mo.universe_size() != n ||
      (w.S && w.S->universe_size() != n)) {
    throw StructuralError("witness universe differs from execution universe");
  }
  Roles roles = roles_of(x);

  // (a) Reads-from: total and functional into reads, value- and
  // location-respecting.
  if (!w.rf.subset_of(roles.eqloc & roles.eqval)) return false;
  for (EventId r : roles.R.elements()) {
    std::uint32_t preds = 0;
    for (std::uint32_t a = 0; a < n; ++a) {
      if (w.rf.contains(a, r)) ++preds;
    }
    if (preds != 1) return false;
  }
  // rf targets only reads; sources being writes is implied by eqval.
  for (auto [a, b] : w.rf.pairs()) {
    if (!roles.R.contains(b)) return false;
  }

  // (b) Modification order: per-location totality over atomic-location
  // writes, and global acyclicity.
  Relation mo_target = (roles.eqloc & Relation::product(roles.W, roles.W)) -
                       Relation::product(roles.nal, roles.nal) -
                       Relation::identity(n);
  if ((w.mo | w.mo.inverse()) != mo_target) return false;
  if (!w.mo.acyclic()) return false;

  // (c) The SC order, when the model demands one.
  if (!needs_S) return !w.S.has_value();
  if (!w.S) return false;
  EventSet sc(n);
  for (std::uint32_t e = 0; e < n; ++e) {
    if (x.lbl[e].is_atomic() && x.lbl[e].ord == MemoryOrder::SC) sc.insert(e);
  }
  Relation s_target = Relation::product(sc, sc) - Relation::identity(n);
  if ((*w.S | w.S->inverse()) != s_target) return false;
  return w.S->acyclic();
}

Env execution_env(const Execution& x) {
  const std::uint32_t n = x.n;
  Roles roles = roles_of(x);
  Env env;
  env.emplace("E2", Relation::full(n));
  env.emplace("id", Relation::identity(n));
  env.emplace("loc", roles.eqloc);
  env.emplace("val", roles.eqval);
  env.emplace("sb", x.sb);
  env.emplace("thd", x.thd);
  env.emplace("wg", x.wg);
  env.emplace("dv", x.dv);
  env.emplace("R", roles.R);
  env.emplace("W", roles.W);
  env.emplace("F", roles.F);
  env.emplace("A", roles.A);
  env.emplace("I", x.I);
  env.emplace("nal", roles.nal);

  EventSet by_ord[5] = {EventSet(n), EventSet(n), EventSet(n), EventSet(n),
                        EventSet(n)};
  EventSet by_scope[4] = {EventSet(n), EventSet(n), EventSet(n), EventSet(n)};
  for (std::uint32_t e = 0; e < n; ++e) {
    const Label& l = x.lbl[e];
    if (l.ord) by_ord[static_cast<int>(*l.ord)].insert(e);
    if (l.scope) by_scope[static_cast<int>(*l.scope)].insert(e);
  }
  env.emplace("RLX", by_ord[static_cast<int>(MemoryOrder::RLX)]);
  env.emplace("ACQ", by_ord[static_cast<int>(MemoryOrder::ACQ)]);
  env.emplace("REL", by_ord[static_cast<int>(MemoryOrder::REL)]);
  env.emplace("AR", by_ord[static_cast<int>(MemoryOrder::AR)]);
  env.emplace("SC", by_ord[static_cast<int>(MemoryOrder::SC)]);
  env.emplace("WI", by_scope[static_cast<int>(Scope::WI)]);
  env.emplace("WG", by_scope[static_cast<int>(Scope::WG)]);
  env.emplace("DV", by_scope[static_cast<int>(Scope::DV)]);
  env.emplace("ALL", by_scope[static_cast<int>(Scope::ALL)]);

  EventSet g(n), l_set(n), fgb(n);
  const bool scoped = x.scoped();
  for (std::uint32_t e = 0; e < n; ++e) {
    const Label& l = x.lbl[e];
    if (l.is_fence()) {
      if (l.kind == EventKind::FG || l.kind == EventKind::FGL) g.insert(e);
      if (l.kind == EventKind::FL || l.kind == EventKind::FGL) l_set.insert(e);
      continue;
    }
    if (!scoped) {
      // Region-free executions treat every access as global.
      g.insert(e);
      continue;
    }
    switch (x.locations[l.loc].region) {
      case Region::Global:
        g.insert(e);
        break;
      case Region::GlobalFgb:
        g.insert(e);
        fgb.insert(e);
        break;
      case Region::Local:
        l_set.insert(e);
        break;
      case Region::C11:
        break;
    }
  }
  env.emplace("G", g);
  env.emplace("L", l_set);
  env.emplace("fgb", fgb);
  return env;
}

void bind_witness(Env& env, const Witness& w) {
  env.insert_or_assign("rf", w.rf);
  env.insert_or_assign("mo", w.mo);
  if (w.S) {
    env.insert_or_assign("S", *w.S);
  } else {
    env.erase("S");
  }
}

Env base_env(const Execution& x, const Witness& w) {
  Env env = execution_env(x);
  bind_witness(env, w);
  return env;
}

ExecutionBuilder::ExecutionBuilder(std::vector<Location> locs, bool scoped)
    : locations_(std::move(locs)), scoped_(scoped) {
  for (const Location& l : locations_) {
    const bool loc_scoped = l.region != Region::C11;
    if (loc_scoped != scoped_) {
      throw StructuralError("location '" + l.name +
                            "' disagrees with the builder's region mode");
    }
  }
}

std::int32_t ExecutionBuilder::loc_index(std::string_view name) const {
  for (std::size_t i = 0; i < locations_.size(); ++i) {
    if (locations_[i].name == name) return static_cast<std::int32_t>(i);
  }
  throw StructuralError("unknown location '" + std::string(name) + "'");
}

EventId ExecutionBuilder::init(std::string_view loc, std::int64_t v) {
  if (threads_started_) {
    throw StructuralError("initial writes must precede all threads");
  }
  const std::int32_t li = loc_index(loc);
  Label l = Label::mk_wna(li, v);
  EventId id = static_cast<EventId>(labels_.size());
  labels_.push_back(l);
  inits_.push_back(id);
  ev_thread_.push_back(0);
  ev_wg_.push_back(0);
  ev_dv_.push_back(0);
  return id;
}

void ExecutionBuilder::begin_device() {
  if (!scoped_) {
    throw StructuralError("devices exist only in scoped executions");
  }
  ++cur_dv_;
  cur_wg_ = -1;
  cur_thread_ = -1;
}

void ExecutionBuilder::begin_workgroup() {
  if (!scoped_) {
    throw StructuralError("work-groups exist only in scoped executions");
  }
  if (cur_dv_ < 0) throw StructuralError("work-group outside any device");
  ++cur_wg_;
  cur_thread_ = -1;
}

void ExecutionBuilder::begin_thread() {
  if (scoped_ && cur_wg_ < 0) {
    throw StructuralError("thread outside any work-group");
  }
  ++cur_thread_;
  threads_started_ = true;
}

EventId ExecutionBuilder::push(const Label& l) {
  if (cur_thread_ < 0) throw StructuralError("event outside any thread");
  EventId id = static_cast<EventId>(labels_.size());
  labels_.push_back(l);
  ev_thread_.push_back(static_cast<std::uint32_t>(cur_thread_));
  ev_wg_.push_back(static_cast<std::uint32_t>(std::max(cur_wg_, 0)));
  ev_dv_.push_back(static_cast<std::uint32_t>(std::max(cur_dv_, 0)));
  return id;
}

Execution ExecutionBuilder::build() const {
  Execution x;
  x.locations = locations_;
  x.n = static_cast<std::uint32_t>(labels_.size());
  x.lbl = labels_;
  x.I = EventSet(x.n);
  for (EventId e : inits_) x.I.insert(e);
  x.thd = Relation(x.n);
  x.wg = Relation(x.n);
  x.dv = Relation(x.n);
  x.sb = Relation(x.n);
  for (std::uint32_t a = 0; a < x.n; ++a) {
    if (x.I.contains(a)) continue;
    for (std::uint32_t b = 0; b < x.n; ++b) {
      if (x.I.contains(b)) continue;
      // Thread and work-group counters restart inside each enclosing group,
      // so identity is the full path, not the bare counter.
      const bool same_dv = !scoped_ || ev_dv_[a] == ev_dv_[b];
      const bool same_wg = same_dv && (!scoped_ || ev_wg_[a] == ev_wg_[b]);
      const bool same_thread = same_wg && ev_thread_[a] == ev_thread_[b];
      if (same_thread) {
        x.thd.insert(a, b);
        if (a < b) x.sb.insert(a, b);
      }
      if (same_wg) x.wg.insert(a, b);
      if (same_dv) x.dv.insert(a, b);
    }
  }
  if (std::string err = validate_execution(x); !err.empty()) {
    throw StructuralError("built execution is invalid: " + err);
  }
  return x;
}

}  // namespace axmm
