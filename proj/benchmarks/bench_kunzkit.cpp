#include <benchmark/benchmark.h>

#include "kunzkit/families.hpp"
#include "kunzkit/nilsemigroup.hpp"
#include "kunzkit/survey.hpp"

using namespace kunzkit;

static void BM_EnumerateKunzVectors(benchmark::State& state) {
  const Int m = state.range(0);
  const Int bound = state.range(1);
  for (auto _ : state) {
    Int count = 0;
    enumerate_kunz_vectors(m, bound, [&](const KunzVector&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_EnumerateKunzVectors)->Args({7, 8})->Args({8, 8})->Args({8, 12});

static void BM_DistinctNilsemigroups(benchmark::State& state) {
  const Int m = state.range(0);
  for (auto _ : state) {
    auto distinct = distinct_nilsemigroups(m, 8, 1);
    benchmark::DoNotOptimize(distinct.size());
  }
}
BENCHMARK(BM_DistinctNilsemigroups)->Arg(7)->Arg(8);

static void BM_SurveySingleMultiplicity(benchmark::State& state) {
  const Int m = state.range(0);
  SurveyOptions options;
  options.bound = 8;
  options.threads = 1;
  for (auto _ : state) {
    auto profile = survey({m}, options);
    benchmark::DoNotOptimize(profile.rows.size());
  }
}
BENCHMARK(BM_SurveySingleMultiplicity)->Arg(7)->Arg(8);

static void BM_EtaViaNilsemigroup(benchmark::State& state) {
  auto s = canonicalize({10, 22, 23, 24});
  for (auto _ : state) {
    auto n = from_semigroup(s);
    benchmark::DoNotOptimize(eta(n).eta);
  }
}
BENCHMARK(BM_EtaViaNilsemigroup);

static void BM_DirectPresentation(benchmark::State& state) {
  auto s = max_embdim_family(state.range(0));
  for (auto _ : state) {
    auto pres = minimal_presentation_direct(s);
    benchmark::DoNotOptimize(pres.eta());
  }
}
BENCHMARK(BM_DirectPresentation)->Arg(6)->Arg(8);

static void BM_AperySet(benchmark::State& state) {
  auto s = eta3_family(30);
  for (auto _ : state) {
    auto ap = apery_set(s);
    benchmark::DoNotOptimize(ap.max());
  }
}
BENCHMARK(BM_AperySet);

BENCHMARK_MAIN();
