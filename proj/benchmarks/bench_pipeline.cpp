// Pipeline phases on generated hosts of roughly 10^3, 10^4 and 10^5
// vertices. The interesting figure is the ratio between consecutive sizes:
// near-linear phases should stay close to 10x per decade.

#include <benchmark/benchmark.h>

#include <map>

#include "pmk/decompose.hpp"
#include "pmk/embedding.hpp"
#include "pmk/generate.hpp"
#include "pmk/median.hpp"
#include "pmk/nesting.hpp"
#include "pmk/squares.hpp"

namespace {

const pmk::Generated& host(int k) {
  static std::map<int, pmk::Generated> cache;
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, pmk::generate_qs(7, k)).first;
  return it->second;
}

void planarity(benchmark::State& st) {
  const pmk::Graph& g = host(static_cast<int>(st.range(0))).graph;
  for (auto _ : st) benchmark::DoNotOptimize(pmk::planar_embed(g));
  st.counters["n"] = g.order();
}

void squares(benchmark::State& st) {
  const pmk::Graph& g = host(static_cast<int>(st.range(0))).graph;
  for (auto _ : st) benchmark::DoNotOptimize(pmk::scan_squares(g, false));
  st.counters["n"] = g.order();
}

void forest(benchmark::State& st) {
  const pmk::Generated& h = host(static_cast<int>(st.range(0)));
  pmk::PlanarCheck pc = pmk::planar_embed(h.graph);
  for (auto _ : st)
    benchmark::DoNotOptimize(pmk::nesting_forest(h.graph, *pc.embedding));
  st.counters["n"] = h.graph.order();
}

void decompose(benchmark::State& st) {
  const pmk::Graph& g = host(static_cast<int>(st.range(0))).graph;
  for (auto _ : st) benchmark::DoNotOptimize(pmk::decompose(g));
  st.counters["n"] = g.order();
}

// the witness-producing recognizer keeps an all-pairs distance table, so it
// only gets the two smaller sizes
void recognize(benchmark::State& st) {
  const pmk::Graph& g = host(static_cast<int>(st.range(0))).graph;
  for (auto _ : st) benchmark::DoNotOptimize(pmk::is_median_planar(g));
  st.counters["n"] = g.order();
}

void generate(benchmark::State& st) {
  int k = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(pmk::generate_qs(7, k));
  st.counters["k"] = k;
}

}  // namespace

BENCHMARK(planarity)->Arg(190)->Arg(1900)->Arg(19000)->Unit(benchmark::kMillisecond);
BENCHMARK(squares)->Arg(190)->Arg(1900)->Arg(19000)->Unit(benchmark::kMillisecond);
BENCHMARK(forest)->Arg(190)->Arg(1900)->Arg(19000)->Unit(benchmark::kMillisecond);
BENCHMARK(decompose)->Arg(190)->Arg(1900)->Arg(19000)->Unit(benchmark::kMillisecond);
BENCHMARK(recognize)->Arg(190)->Arg(1900)->Unit(benchmark::kMillisecond);
BENCHMARK(generate)->Arg(190)->Arg(1900)->Arg(19000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
