// Micro benchmarks for the hot paths: graph extraction, the deviation
// checker, single best responses, degree-sequence realization and the
// girth-5 regular graph sampler. Sizes follow the acceptance workloads.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "netgame/constructions.hpp"
#include "netgame/degree_sequence.hpp"
#include "netgame/model.hpp"
#include "netgame/regular_graph.hpp"
#include "netgame/stability.hpp"

using namespace netgame;

namespace {

// d-regular 4-uniform hypergraph networks double as "typical sparse config"
// fixtures: thousands of small events, meeting rates summing to 1
EventConfiguration hyper_fixture(int n) {
  Parameters p;
  p.a = Rational(1);
  p.c = Rational(2);
  p.b = BCost::concrete(Rational(0));
  p.n = n;
  HypergraphSpec spec;
  spec.n = n;
  spec.k = 4;
  spec.d = 3;
  spec.seed = 1;
  return build_hypergraph_network(p, spec).config;
}

void BM_connection_graph(benchmark::State& state) {
  EventConfiguration cfg = hyper_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(connection_graph(cfg));
}
BENCHMARK(BM_connection_graph)->Arg(400)->Arg(1200)->Arg(3000);

void BM_deviation_check(benchmark::State& state) {
  EventConfiguration cfg = hyper_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_stability_deviation(cfg));
}
BENCHMARK(BM_deviation_check)->Arg(400)->Arg(1200)->Arg(3000);

void BM_best_response(benchmark::State& state) {
  EventConfiguration cfg = hyper_fixture(static_cast<int>(state.range(0)));
  AttendanceIndex idx = attendance_index(cfg);
  AgentId v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(best_response(cfg, idx, v));
    v = (v + 1) % cfg.params.n;
  }
}
BENCHMARK(BM_best_response)->Arg(1200)->Arg(3000);

void BM_realize_degrees(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  DegreeSequence seq = powerlaw_sequence(Rational(5, 2), n);
  Parameters p;
  p.a = Rational(11);
  p.c = Rational(20);
  p.b = BCost::eps();
  p.n = n;
  for (auto _ : state) benchmark::DoNotOptimize(realize_degrees(seq, p, 1));
}
BENCHMARK(BM_realize_degrees)->Arg(500)->Arg(2000);

void BM_regular_girth5(benchmark::State& state) {
  int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gen_regular_girth5(3, m, 1));
}
BENCHMARK(BM_regular_girth5)->Arg(40)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
