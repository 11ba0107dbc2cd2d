#include <benchmark/benchmark.h>

#include "ladderlab/bounds.hpp"
#include "ladderlab/ladder.hpp"
#include "ladderlab/ramsey.hpp"

using namespace ladderlab;

namespace {

FreeProduct product(std::uint32_t p, std::uint32_t q) {
  return FreeProduct({FactorGroup::cyclic(FactorId{0}, p), FactorGroup::cyclic(FactorId{1}, q)});
}

}  // namespace

static void BM_EnumerateBall(benchmark::State& state) {
  const auto fp = product(3, 3);
  const auto r = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fp.enumerate_ball(r).members.size());
}
BENCHMARK(BM_EnumerateBall)->DenseRange(2, 8, 2);

static void BM_BuildRelation(benchmark::State& state) {
  const auto fp = product(2, 3);
  const auto domain = SearchDomain::ball(fp, static_cast<std::size_t>(state.range(0)));
  const auto w = parse_word("x1 y1 x1^-1 y1^-1");
  for (auto _ : state) benchmark::DoNotOptimize(build_relation(fp, w, domain).rows());
}
BENCHMARK(BM_BuildRelation)->DenseRange(1, 4);

static void BM_SearchLadder(benchmark::State& state) {
  const auto fp = product(2, 3);
  const auto domain = SearchDomain::ball(fp, 3);
  const auto rel = build_relation(fp, parse_word("x1 y1 x1^-1 y1^-1"), domain);
  SearchOptions opts;
  opts.cutoff = 8;
  opts.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(search_ladder(rel, opts).index);
}
BENCHMARK(BM_SearchLadder)->Arg(1)->Arg(4)->UseRealTime();

static void BM_RamseyUpper(benchmark::State& state) {
  const BigInt colors = state.range(0);
  const auto target = BoundValue::exact(BigInt(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(ramsey_upper(colors, target));
}
BENCHMARK(BM_RamseyUpper)->Args({3, 6})->Args({4, 8})->Args({16, 3})->Args({64, 40});

static void BM_TheoremBound(benchmark::State& state) {
  const std::vector<FactorGroup> factors{FactorGroup::cyclic(FactorId{0}, 2),
                                         FactorGroup::cyclic(FactorId{1}, 3)};
  const auto w = parse_word("x1 y1 x1^-1 y1^-1");
  const auto r = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theorem_bound(w, r, factors).bound);
}
BENCHMARK(BM_TheoremBound)->DenseRange(1, 3);

BENCHMARK_MAIN();
