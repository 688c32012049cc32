#include <benchmark/benchmark.h>

#include "dicehit/dicehit.hpp"

using namespace dicehit;

static void BM_EngineRounds(benchmark::State& state) {
  const auto rounds = static_cast<std::uint64_t>(state.range(0));
  Game game{DieSpec::fair(6), PredicateSpec::prime(), 0};
  for (auto _ : state) {
    Trace t = run(GameSpec{game, FixedRounds{rounds}});
    benchmark::DoNotOptimize(t.sums.duration[1]);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EngineRounds)->RangeMultiplier(2)->Range(100, 1600)->Unit(benchmark::kMillisecond)->Complexity();

static void BM_LoadedDieRounds(benchmark::State& state) {
  Game game{DieSpec::parse("1:3,2:1,3:5,5:2,8:1"), PredicateSpec::distinct_prime_product(2), 0};
  for (auto _ : state) {
    Trace t = run(GameSpec{game, FixedRounds{static_cast<std::uint64_t>(state.range(0))}});
    benchmark::DoNotOptimize(t.sums.duration[1]);
  }
}
BENCHMARK(BM_LoadedDieRounds)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

static void BM_DieShift(benchmark::State& state) {
  const bool window = state.range(1) != 0;
  DieSpec die = DieSpec::fair(6);
  std::vector<mpz_class> in(static_cast<std::size_t>(state.range(0)));
  mpz_class v = 1;
  for (auto& x : in) {
    x = v;
    v = v * 6 + 1;
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 2000) v = 1;
  }
  std::vector<mpz_class> out;
  for (auto _ : state) {
    detail::die_shift_accumulate(in, die, out, window);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_DieShift)->ArgsProduct({{1000, 5000}, {0, 1}});

static void BM_Sieve(benchmark::State& state) {
  for (auto _ : state) {
    FactorSieve s = build_sieve(static_cast<std::uint64_t>(state.range(0)));
    benchmark::DoNotOptimize(s.smallest_factor(state.range(0)));
  }
}
BENCHMARK(BM_Sieve)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMicrosecond);

static void BM_Simulate(benchmark::State& state) {
  Game game{DieSpec::fair(6), PredicateSpec::prime(), 0};
  for (auto _ : state) {
    SimResult r = simulate(game, 100000, 200, 1, static_cast<unsigned>(state.range(0)));
    benchmark::DoNotOptimize(r.mean_T);
  }
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
