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
// Micro-benchmarks for the hot paths: bitset relation algebra, whole-model
// evaluation on pinned candidates, end-to-end judgment of small litmus
// tests, and random-candidate generation. The store-buffering wall-clock
// comparison across models lives in the CLI's bench subcommand; these
// measure the pieces it is built from.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <string>

#include "axmm/checker.hpp"
#include "axmm/frontend.hpp"
#include "axmm/golden.hpp"
#include "axmm/models.hpp"
#include "axmm/oracle.hpp"
#include "axmm/relalg.hpp"

namespace {

using namespace axmm;

/// Deterministic sparse relation, about 5% dense.
Relation random_relation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  Relation r(n);
  const std::uint64_t pairs = n * n / 20;
  for (std::uint64_t i = 0; i < pairs; ++i) {
    const auto a = static_cast<EventId>(g() % n);
    const auto b = static_cast<EventId>(g() % n);
    r.insert(a, b);
  }
  return r;
}

void BM_relation_compose(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Relation a = random_relation(n, 1);
  const Relation b = random_relation(n, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.compose(b));
  }
}
BENCHMARK(BM_relation_compose)->Arg(64)->Arg(256);

void BM_relation_trans_closure(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Relation a = random_relation(n, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.trans_closure());
  }
}
BENCHMARK(BM_relation_trans_closure)->Arg(64)->Arg(256);

void BM_relation_acyclic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  // A long chain is the worst honest case for cycle detection: no early
  // exit, full propagation.
  Relation chain(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    chain.insert(static_cast<EventId>(i), static_cast<EventId>(i + 1));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(chain.acyclic());
  }
}
BENCHMARK(BM_relation_acyclic)->Arg(64)->Arg(256);

void BM_eval_model_c11(benchmark::State& state) {
  const golden::PinnedCandidate c = golden::mixed_sc(false);
  const cat::ModelDef m = models::get_model("c11_simp", {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(cat::eval_model(m, c.x, c.w));
  }
}
BENCHMARK(BM_eval_model_c11);

void BM_eval_model_opencl(benchmark::State& state) {
  const golden::PinnedCandidate c = golden::twisted_sb();
  const cat::ModelDef m = models::get_model("opencl_scoped", {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(cat::eval_model(m, c.x, c.w));
  }
}
BENCHMARK(BM_eval_model_opencl);

void BM_allowed_sb_pruned(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::string src = "test sb c11\n";
  for (int i = 1; i <= n; ++i) {
    src += "atomic int x" + std::to_string(i) + " = 0;\n";
  }
  for (int i = 1; i <= n; ++i) {
    if (i > 1) src += " || ";
    src += "{ store(x" + std::to_string((i % n) + 1) + ", 1); r" +
           std::to_string(i) + " = load(x" + std::to_string(i) + "); }";
  }
  src += "\n";
  const frontend::LitmusProgram p = frontend::parse_litmus(src);
  const cat::ModelDef m = models::get_model("c11_simp", {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(checker::allowed(p, m, {}));
  }
}
BENCHMARK(BM_allowed_sb_pruned)->Arg(2)->Arg(3);

void BM_allowed_sb_explicit_order(benchmark::State& state) {
  const frontend::LitmusProgram p = frontend::parse_litmus(
      "test sb c11\n"
      "atomic int x1 = 0;\n"
      "atomic int x2 = 0;\n"
      "{ store(x2, 1); r1 = load(x1); } || { store(x1, 1); r2 = load(x2); }\n");
  const cat::ModelDef m = models::get_model("c11_orig", {});
  checker::CheckConfig cfg;
  cfg.prune = false;
  for (auto _ : state) {
    benchmark::DoNotOptimize(checker::allowed(p, m, cfg));
  }
}
BENCHMARK(BM_allowed_sb_explicit_order);

void BM_oracle_gen_candidate(benchmark::State& state) {
  oracle::RandomCandidateSpec spec;
  spec.opencl = state.range(0) != 0;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    spec.seed = seed++;
    benchmark::DoNotOptimize(oracle::gen_candidate(spec));
  }
}
BENCHMARK(BM_oracle_gen_candidate)->Arg(0)->Arg(1);

void BM_oracle_sc_elimination(benchmark::State& state) {
  oracle::RandomCandidateSpec spec;
  spec.seed = 7;
  const oracle::Candidate c = oracle::gen_candidate(spec);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::check_sc_elimination(c.x, c.w));
  }
}
BENCHMARK(BM_oracle_sc_elimination);

}  // namespace

BENCHMARK_MAIN();
