//
// Project dpoc - Copyright 2026 The dpoc Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include "dpoc/canonical.h"
#include "dpoc/chemistry.h"
#include "dpoc/compose.h"
#include "dpoc/morphism.h"

namespace {

using namespace dpoc;

MolGraph carbon_chain(int n) {
  MolGraph g;
  for (int i = 0; i < n; ++i)
    g.add_vertex("C");
  for (int i = 0; i + 1 < n; ++i)
    g.add_edge(i, i + 1, "-");
  return g;
}

void BM_CanonicalCode(benchmark::State &state) {
  const MolGraph g = carbon_chain(static_cast<int>(state.range(0)));
  for (auto _: state)
    benchmark::DoNotOptimize(canonical_code(g));
}
BENCHMARK(BM_CanonicalCode)->Arg(8)->Arg(32)->Arg(128);

void BM_Embeddings(benchmark::State &state) {
  const Ruleset rs = formose_ruleset();
  const MolGraph pattern = left_side(rs.rule("p0")).graph;
  MolGraph host = carbon_chain(static_cast<int>(state.range(0)));
  const int o = host.add_vertex("O");
  host.add_edge(0, o, "=");
  for (int i = 0; i < static_cast<int>(state.range(0)); ++i) {
    const int h = host.add_vertex("H");
    host.add_edge(i, h, "-");
  }
  for (auto _: state)
    benchmark::DoNotOptimize(enumerate_embeddings(pattern, host));
}
BENCHMARK(BM_Embeddings)->Arg(4)->Arg(16)->Arg(64);

void BM_ComposeAll(benchmark::State &state) {
  const Ruleset rs = formose_ruleset();
  for (auto _: state)
    benchmark::DoNotOptimize(compose_all(rs.rule("p0"), rs.rule("p2")));
}
BENCHMARK(BM_ComposeAll);

void BM_Universe(benchmark::State &state) {
  const Ruleset rs = formose_ruleset();
  UniverseOptions opt;
  opt.max_len = static_cast<int>(state.range(0));
  for (auto _: state)
    benchmark::DoNotOptimize(composition_universe(rs.rules, { rs.graph("g0"), rs.graph("g1") }, opt));
}
BENCHMARK(BM_Universe)->DenseRange(4, 10, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
