#include <benchmark/benchmark.h>

#include "wdrd/arcs.hpp"
#include "wdrd/census.hpp"
#include "wdrd/families.hpp"
#include "wdrd/iso.hpp"
#include "wdrd/scheme.hpp"

using namespace wdrd;

namespace {

// viii(q, n) has 2qn vertices.
Digraph family_viii(std::int64_t q, std::int64_t n) {
  return construct(parse_family_spec("viii(q=" + std::to_string(q) + ",n=" + std::to_string(n) + ")"))
      .digraph;
}

void BM_DistanceTable(benchmark::State& state) {
  const Digraph d = family_viii(state.range(0), state.range(0) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(distance_table(d));
  state.SetLabel(std::to_string(d.vertex_count()) + " vertices");
}
BENCHMARK(BM_DistanceTable)->Arg(4)->Arg(6)->Arg(9);

void BM_CheckWdrd(benchmark::State& state) {
  const Digraph d = family_viii(state.range(0), state.range(0) - 1);
  const RelationPartition r = compute_relations(d, distance_table(d));
  for (auto _ : state) benchmark::DoNotOptimize(check_wdrd(r));
  state.SetLabel(std::to_string(d.vertex_count()) + " vertices");
}
BENCHMARK(BM_CheckWdrd)->Arg(4)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_ArcTypeProfile(benchmark::State& state) {
  const Digraph d = family_viii(state.range(0), state.range(0) - 1);
  const DistanceTable t = distance_table(d);
  for (auto _ : state) benchmark::DoNotOptimize(arc_type_profile(d, t));
}
BENCHMARK(BM_ArcTypeProfile)->Arg(4)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state) {
  const Digraph d = family_viii(state.range(0), state.range(0) - 1);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(d));
  state.SetLabel(std::to_string(d.vertex_count()) + " vertices");
}
BENCHMARK(BM_CanonicalForm)->Arg(4)->Arg(6)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_Census(benchmark::State& state) {
  CensusOptions o;
  o.max_order = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(run_census(o));
}
BENCHMARK(BM_Census)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
