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

#include "axmm/models.hpp"

#include <stdexcept>

namespace axmm::models {
namespace {

// Bindings shared by every model: release/acquire classification, from-read,
// fence adjacency, release sequences, the initial-writes-first relation, and
// the conflict relation.
constexpr const char kCommon[] = R"(# Acquire-like and release-like events.
let acq = ACQ | AR | (SC & (R | F))
let rel = REL | AR | (SC & (W | F))
# From-read: from each read to the writes that overwrite the one it read.
let fr = rf^-1 ; mo
# A fence before, respectively after, an event in program order.
let Fsb = [F] ; sb
let sbF = sb ; [F]
# Release sequences: maximal modification-order runs after a write in which
# every element is by the same thread or is a read-modify-write.
let rs' = thd | (E2 ; [R & W])
let rs = (mo & rs') \ ((mo \ rs') ; mo)
# Initial writes precede every non-initial event.
let inithb = ([I] ; E2) \ (E2 ; [I])
# Same-location conflicts, at least one side writing.
let cnf = ((W * W) | (W * R) | (R * W)) & loc
)";

// C11-only derived relations.
constexpr const char kC11Derived[] =
    R"(let sw = ([rel] ; Fsb? ; [A & W] ; rs? ; rf ; [R & A] ; sbF? ; [acq]) \ thd
let hb = (sb | inithb | sw)+
let hbl = hb & loc
# Visible side effects: happens-before writes not hidden by a later one.
let vis = ((W * R) & hbl) \ (hbl ; [W] ; hb)
# Data races. id is subtracted: an initial write belongs to no thread and
# would otherwise conflict with itself.
let dr = cnf \ hb \ hb^-1 \ (A * A) \ thd \ id
)";

// The C11 axioms every variant shares.
constexpr const char kC11CoreAxioms[] = R"(irreflexive hb as Hb
irreflexive (rf^-1)? ; mo ; rf? ; hb as Coh
irreflexive rf ; hb as Rf
empty (rf ; [nal]) \ vis as NaRf
irreflexive rf | (mo ; mo ; rf^-1) | (mo ; rf) as Rmw
)";

// The explicit-S formulation: S is an enumerated strict total order over the
// SC events, constrained edge family by edge family.
constexpr const char kC11OrigDecls[] = R"(witness S linear over SC
let r4 = rf^-1 ; hbl ; [W]
)";

constexpr const char kC11OrigSAxioms[] = R"(irreflexive S ; hb as S1
irreflexive S ; Fsb? ; mo ; sbF? as S2
irreflexive S ; rf^-1 ; [SC] ; mo as S3
irreflexive (S \ (mo ; S)) ; r4 as S4
irreflexive S ; Fsb ; fr as S5
irreflexive S ; fr ; sbF as S6
irreflexive S ; Fsb ; fr ; sbF as S7
)";

// The partial-order formulation: no S is enumerated; instead the union of
// the seven edge families must be acyclic between distinct SC events.
constexpr const char kC11PartialDecls[] = R"(let r4 = rf^-1 ; hbl ; [W]
let scomb = hb | (Fsb? ; mo ; sbF?) | (rf^-1 ; [SC] ; mo) | r4 | (Fsb ; fr) | (fr ; sbF) | (Fsb ; fr ; sbF)
)";

constexpr const char kC11PartialS[] =
    R"(acyclic ((SC * SC) \ id) & scomb as Spartial
)";

// The simplified formulation: one fence-bracketed union.
constexpr const char kC11SimpS[] =
    R"(acyclic ((SC * SC) \ id) & (Fsb? ; (hb | fr | mo) ; sbF?) as Ssimp
)";

constexpr const char kC11Ub[] = "undefined_unless empty dr as Dr\n";

// Two events are inclusive when each is reachable by the other's scope:
// both work-group scoped in one work-group, both device scoped on one
// device, or both all-scoped.
constexpr const char kInclDefault[] =
    R"(let incl = ((WG * WG) & wg) | ((DV * DV) & dv) | (ALL * ALL)
)";

// The widened variant: each side's own scope must reach the other side, but
// the two scopes may differ.
constexpr const char kInclNew[] =
    R"(let incl1 = ([WG] ; wg) | ([DV] ; dv) | ([ALL] ; E2)
let incl = incl1 & incl1^-1
)";

// OpenCL derived relations: per-region synchronisation, happens-before,
// visibility, and the two fault relations.
constexpr const char kOclDerived[] = R"(let glf = G & L & F
let rswG = (([G & rel] ; Fsb? ; [W & A] ; rs? ; [G] ; rf ; [R & A] ; sbF? ; [G & acq]) & incl) \ thd
let rswL = (([L & rel] ; Fsb? ; [W & A] ; rs? ; [L] ; rf ; [R & A] ; sbF? ; [L & acq]) & incl) \ thd
# Synchronisation in the other region carries over only for SC pairs and
# for pairs of global-and-local fences.
let gsw = rswG | (rswL & ((SC * SC) | (glf * glf)))
let lsw = rswL | (rswG & ((SC * SC) | (glf * glf)))
let ghb = (((G * G) & (sb | inithb)) | gsw)+
let lhb = (((L * L) & (sb | inithb)) | lsw)+
let ghbl = ghb & loc
let lhbl = lhb & loc
let gvis = ((W * R) & ghbl) \ (ghbl ; [W] ; ghb)
let lvis = ((W * R) & lhbl) \ (lhbl ; [W] ; lhb)
# Heterogeneous races: conflicts neither ordered by either happens-before
# nor covered by mutual scope inclusion. id is subtracted: initial writes
# carry no scope and would otherwise race with themselves.
let hr = cnf \ (ghb | lhb) \ (ghb | lhb)^-1 \ incl \ thd \ id
# Inter-device races: conflicts across devices away from fine-grained
# buffers. Pairs involving initial writes are exempt; those belong to no
# device.
let initpairs = ([I] ; E2) | (E2 ; [I])
let iddr = cnf \ dv \ (fgb * fgb) \ initpairs
)";

// Global configuration guards: full iff every SC operation is all-scoped on
// a fine-grained buffer (I), respectively device-scoped off one (II).
constexpr const char kOclScond[] =
    R"(let scondI = ~(E2 ; [SC \ (ALL & fgb)] ; E2)
let scondII = ~(E2 ; [SC \ (DV \ fgb)] ; E2)
)";

constexpr const char kOclCoreAxioms[] = R"(irreflexive ghb as HbG
irreflexive lhb as HbL
irreflexive (rf^-1)? ; mo ; rf? ; ghb as CohG
irreflexive (rf^-1)? ; mo ; rf? ; lhb as CohL
irreflexive rf ; (ghb | lhb) as Rf
empty (rf ; [G & nal]) \ gvis as NaRfG
empty (rf ; [L & nal]) \ lvis as NaRfL
irreflexive rf | (mo ; mo ; rf^-1) | (mo ; rf) as Rmw
)";

// SC axiom applying only under one of the two global configurations.
constexpr const char kOclSimpS[] =
    R"(acyclic ((SC * SC) \ id) & (scondI | scondII) & (Fsb? ; (ghb | lhb | fr | mo) ; sbF?) as Ssimp
)";

// SC axiom applying pairwise to mutually inclusive SC operations.
constexpr const char kOclScopedS[] =
    R"(acyclic ((SC * SC) \ id) & (Fsb? ; (ghb | lhb | fr | mo) ; sbF?) & incl as Sscoped
)";

constexpr const char kOclUb[] =
    "undefined_unless empty hr as Hr\n"
    "undefined_unless empty iddr as Iddr\n";

bool is_c11(const std::string& name) {
  return name == "c11_orig" || name == "c11_partial" || name == "c11_simp";
}

bool is_opencl(const std::string& name) {
  return name == "opencl_simp" || name == "opencl_scoped";
}

}  // namespace

const std::vector<std::string>& builtin_model_names() {
  static const std::vector<std::string> names = {
      "c11_orig", "c11_partial", "c11_simp", "opencl_simp", "opencl_scoped"};
  return names;
}

std::string get_model_text(const std::string& name,
                           const ModelOptions& options) {
  if (options.new_incl && is_c11(name)) {
    throw std::invalid_argument("model option new_incl applies to OpenCL "
                                "models only, not to " + name);
  }
  if (name == "c11_orig") {
    return std::string(kCommon) + kC11Derived + kC11OrigDecls +
           kC11CoreAxioms + kC11OrigSAxioms + kC11Ub;
  }
  if (name == "c11_partial") {
    return std::string(kCommon) + kC11Derived + kC11PartialDecls +
           kC11CoreAxioms + kC11PartialS + kC11Ub;
  }
  if (name == "c11_simp") {
    return std::string(kCommon) + kC11Derived + kC11CoreAxioms + kC11SimpS +
           kC11Ub;
  }
  if (is_opencl(name)) {
    std::string text = std::string(kCommon) +
                       (options.new_incl ? kInclNew : kInclDefault) +
                       kOclDerived;
    if (name == "opencl_simp") {
      text += kOclScond;
      text += kOclCoreAxioms;
      text += kOclSimpS;
    } else {
      text += kOclCoreAxioms;
      text += kOclScopedS;
    }
    text += kOclUb;
    return text;
  }
  throw std::invalid_argument("unknown model: " + name);
}

cat::ModelDef get_model(const std::string& name, const ModelOptions& options) {
  cat::ModelDef m = cat::parse_model(get_model_text(name, options));
  m.name = name;
  return m;
}

}  // namespace axmm::models
