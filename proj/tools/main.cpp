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
// Command-line driver. Four subcommands:
//   run     judge one litmus test under one model and print the report
//   gen-sb  emit an N-thread store-buffering litmus test
//   bench   time store-buffering tests across models into CSV
//   oracle  fuzz the order-reduction equivalences on random candidates
//
// Exit status of `run`: 0 when the program has defined behaviour, 2 when
// some consistent candidate is faulty (undefined behaviour), 1 on any
// error. The other subcommands exit 0 on success and 1 on error, where
// `oracle` counts any equivalence violation as an error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "axmm/checker.hpp"
#include "axmm/errors.hpp"
#include "axmm/frontend.hpp"
#include "axmm/models.hpp"
#include "axmm/oracle.hpp"

namespace {

using namespace axmm;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Workers come from the flag unless LITMUS_AXIOM_WORKERS names a positive
/// count, which wins so batch environments can retune installed scripts.
unsigned effective_workers(unsigned from_flag) {
  const char* env = std::getenv("LITMUS_AXIOM_WORKERS");
  if (env != nullptr) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return from_flag;
}

/// A model argument is a built-in name or a path to a model text.
cat::ModelDef resolve_model(const std::string& arg,
                            const models::ModelOptions& opts) {
  for (const std::string& name : models::builtin_model_names()) {
    if (name == arg) return models::get_model(arg, opts);
  }
  if (opts.new_incl) {
    throw std::runtime_error(
        "--new-incl rewrites the built-in scope-inclusion definition and "
        "has no effect on a model file; edit the file instead");
  }
  return cat::parse_model(slurp(arg));
}

/// The classic store-buffering pattern: thread i raises the next thread's
/// flag, then reads its own. Shape and spelling match the shipped corpus
/// files, so generated tests diff cleanly against them.
std::string generate_sb(int n) {
  std::ostringstream out;
  out << "test sb" << n << " c11\n";
  for (int i = 1; i <= n; ++i) out << "atomic int x" << i << " = 0;\n";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) out << " || ";
    out << "{ store(x" << (i % n) + 1 << ", 1); r" << i << " = load(x" << i
        << "); }";
  }
  out << "\n";
  out << "exists (";
  for (int i = 1; i <= n; ++i) {
    if (i > 1) out << " /\\ ";
    out << "r" << i << " == 0";
  }
  out << ")\n";
  return out.str();
}

std::string csv_quote(const std::string& s) {
  // None of our fields contain commas or quotes today; keep the seam.
  return s;
}

int cmd_run(const std::string& model_arg, const std::string& litmus_path,
            const models::ModelOptions& mopts, bool allow_wi,
            const checker::CheckConfig& cfg, const std::string& format) {
  frontend::ParseOptions po;
  po.allow_wi = allow_wi;
  const frontend::LitmusProgram p = frontend::parse_litmus(slurp(litmus_path), po);
  const cat::ModelDef m = resolve_model(model_arg, mopts);
  const checker::CheckReport r = checker::allowed(p, m, cfg);
  if (format == "csv") {
    std::cout << "test,model,undefined,states,query,truncated,basic,"
                 "candidates,consistent,seconds\n";
    std::cout << csv_quote(r.test_name) << ',' << csv_quote(r.model_name)
              << ',' << (r.undefined ? 1 : 0) << ',' << r.outcomes.size()
              << ','
              << (r.has_query ? (r.query_witnessed ? "witnessed"
                                                   : "not-witnessed")
                              : "none")
              << ',' << (r.truncated ? 1 : 0) << ',' << r.stats.basic_executions
              << ',' << r.stats.candidates_tested << ','
              << r.stats.candidates_consistent << ',' << r.stats.seconds
              << '\n';
  } else {
    std::cout << checker::render_text_report(r);
  }
  return r.undefined ? 2 : 0;
}

int cmd_bench(const std::vector<std::string>& model_args, int min_n,
              int max_n, int repeats, double timeout, unsigned workers) {
  std::cout << "model,N,mean_seconds,states,timed_out\n";
  for (const std::string& model_arg : model_args) {
    const cat::ModelDef m = resolve_model(model_arg, {});
    for (int n = min_n; n <= max_n; ++n) {
      const frontend::LitmusProgram p =
          frontend::parse_litmus(generate_sb(n));
      checker::CheckConfig cfg;
      // Time is the only budget here: the point is to watch the explicit
      // witness order blow up, so the candidate cap must never fire first,
      // and the S search runs unpruned to price that order honestly.
      cfg.max_candidates = UINT64_MAX;
      cfg.prune = false;
      cfg.workers = workers;
      cfg.max_seconds = timeout;
      double total = 0.0;
      std::size_t states = 0;
      bool timed_out = false;
      for (int rep = 0; rep < repeats && !timed_out; ++rep) {
        try {
          const checker::CheckReport r = checker::allowed(p, m, cfg);
          total += r.stats.seconds;
          states = r.outcomes.size();
        } catch (const ResourceError&) {
          timed_out = true;
        }
      }
      if (timed_out) {
        std::cout << csv_quote(model_arg) << ',' << n << ',' << timeout
                  << ",,1\n";
        // Larger instances only get slower; stop scanning this model.
        break;
      }
      std::cout << csv_quote(model_arg) << ',' << n << ','
                << total / repeats << ',' << states << ",0\n";
    }
  }
  return 0;
}

int cmd_oracle(const oracle::RandomCandidateSpec& spec, std::uint64_t count) {
  const oracle::OracleReport r = oracle::run_oracle(spec, count);
  std::cout << "candidates " << r.candidates << "\n"
            << "order_reduction_failures " << r.order_reduction_failures
            << "\n"
            << "sc_elimination_failures " << r.sc_elimination_failures << "\n"
            << "sc_simplification_failures " << r.sc_simplification_failures
            << "\n"
            << "partial_equivalence_failures "
            << r.partial_equivalence_failures << "\n"
            << "seconds " << r.seconds;
  if (r.seconds > 0.0) {
    std::cout << " (" << static_cast<std::uint64_t>(r.candidates / r.seconds)
              << " candidates/s)";
  }
  std::cout << "\n";
  return r.total_failures() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"axiomatic litmus-test simulator"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand(
      "run", "judge one litmus test under one model");
  std::string run_model = "c11_simp";
  std::string run_file;
  std::string run_format = "text";
  bool run_new_incl = false;
  bool run_fast = false;
  bool run_no_prune = false;
  bool run_allow_wi = false;
  unsigned run_unroll = 2;
  std::uint64_t run_max_candidates = 10'000'000;
  unsigned run_workers = 1;
  double run_max_seconds = 0.0;
  run->add_option("--model", run_model,
                  "built-in model name or path to a model file")
      ->capture_default_str();
  run->add_option("file", run_file, "litmus test to judge")->required();
  run->add_option("--format", run_format, "text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();
  run->add_flag("--new-incl", run_new_incl,
                "widen scope inclusion to mutual reach (built-ins only)");
  run->add_flag("--fast", run_fast,
                "stop at the first faulty candidate (statistics partial)");
  run->add_flag("--no-prune", run_no_prune,
                "enumerate every witness order instead of searching");
  run->add_flag("--allow-wi", run_allow_wi,
                "accept the opt-in work-item scope");
  run->add_option("--unroll", run_unroll, "loop unrolling bound")
      ->capture_default_str();
  run->add_option("--max-candidates", run_max_candidates,
                  "candidate budget per run")
      ->capture_default_str();
  run->add_option("--workers", run_workers, "worker threads")
      ->capture_default_str();
  run->add_option("--max-seconds", run_max_seconds,
                  "wall-clock budget, 0 = unlimited")
      ->capture_default_str();

  // --- gen-sb ------------------------------------------------------------
  auto* gen = app.add_subcommand(
      "gen-sb", "emit an N-thread store-buffering litmus test");
  int gen_n = 2;
  gen->add_option("n", gen_n, "thread count")
      ->required()
      ->check(CLI::Range(2, 10));

  // --- bench -------------------------------------------------------------
  auto* bench = app.add_subcommand(
      "bench", "time store-buffering tests across models, CSV to stdout");
  std::vector<std::string> bench_models = {"c11_orig", "c11_simp"};
  int bench_min = 2;
  int bench_max = 6;
  int bench_repeats = 10;
  double bench_timeout = 300.0;
  unsigned bench_workers = 1;
  bench->add_option("--models", bench_models, "models to time")
      ->delimiter(',')
      ->capture_default_str();
  bench->add_option("--min-n", bench_min, "smallest thread count")
      ->check(CLI::Range(2, 10))
      ->capture_default_str();
  bench->add_option("--max-n", bench_max, "largest thread count")
      ->check(CLI::Range(2, 10))
      ->capture_default_str();
  bench->add_option("--repeats", bench_repeats, "runs averaged per point")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bench->add_option("--timeout", bench_timeout,
                    "per-run wall-clock budget in seconds")
      ->capture_default_str();
  bench->add_option("--workers", bench_workers, "worker threads")
      ->capture_default_str();

  // --- oracle ------------------------------------------------------------
  auto* orc = app.add_subcommand(
      "oracle", "fuzz the order-reduction equivalences on random candidates");
  oracle::RandomCandidateSpec spec;
  std::uint64_t orc_count = 1000;
  orc->add_option("--count", orc_count, "candidates to draw")
      ->capture_default_str();
  orc->add_option("--seed", spec.seed, "first seed")->capture_default_str();
  orc->add_option("--max-events", spec.max_events,
                  "largest candidate size (at most 8)")
      ->capture_default_str();
  orc->add_option("--max-locations", spec.max_locations,
                  "distinct locations (at most 2)")
      ->capture_default_str();
  orc->add_flag("--opencl", spec.opencl,
                "draw heterogeneous candidates with regions and scopes");
  orc->add_option("--sc-bias", spec.sc_bias_percent,
                  "percent of atomics drawn sequentially consistent")
      ->capture_default_str();
  orc->add_option("--max-sc", spec.max_sc_events,
                  "cap on sequentially consistent events per candidate")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      models::ModelOptions mopts;
      mopts.new_incl = run_new_incl;
      checker::CheckConfig cfg;
      cfg.enumerate.unroll = run_unroll;
      cfg.max_candidates = run_max_candidates;
      cfg.prune = !run_no_prune;
      cfg.fast = run_fast;
      cfg.workers = effective_workers(run_workers);
      cfg.max_seconds = run_max_seconds;
      return cmd_run(run_model, run_file, mopts, run_allow_wi, cfg,
                     run_format);
    }
    if (gen->parsed()) {
      std::cout << generate_sb(gen_n);
      return 0;
    }
    if (bench->parsed()) {
      return cmd_bench(bench_models, bench_min, bench_max, bench_repeats,
                       bench_timeout, effective_workers(bench_workers));
    }
    if (orc->parsed()) {
      return cmd_oracle(spec, orc_count);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
