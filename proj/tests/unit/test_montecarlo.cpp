#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dicehit/errors.hpp"
#include "dicehit/montecarlo.hpp"
#include "dicehit/stats.hpp"

namespace dicehit {
namespace {

Game fair_prime() { return Game{DieSpec::fair(6), PredicateSpec::prime(), 0}; }

TEST(Simulate, ReproducibleForSameSeed) {
  SimResult a = simulate(fair_prime(), 50000, 1000, 42);
  SimResult b = simulate(fair_prime(), 50000, 1000, 42);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_EQ(a.mean_T, b.mean_T);
  EXPECT_EQ(a.var_T, b.var_T);
  EXPECT_EQ(a.mean_N, b.mean_N);
  EXPECT_EQ(a.seed, 42u);
  EXPECT_EQ(a.generator, kGeneratorName);
  SimResult c = simulate(fair_prime(), 50000, 1000, 43);
  EXPECT_NE(a.mean_T, c.mean_T);
}

TEST(Simulate, IndependentOfWorkerCount) {
  SimResult one = simulate(fair_prime(), 100000, 1000, 7, 1);
  for (unsigned w : {2u, 3u, 8u}) {
    SimResult many = simulate(fair_prime(), 100000, 1000, 7, w);
    EXPECT_EQ(one.hits, many.hits);
    EXPECT_EQ(one.mean_T, many.mean_T);
    EXPECT_EQ(one.var_T, many.var_T);
    EXPECT_EQ(one.mean_N, many.mean_N);
  }
}

TEST(Simulate, UnitDieIsDeterministic) {
  SimResult r = simulate(Game{DieSpec::fair(1), PredicateSpec::prime(), 0}, 1000, 10, 1);
  EXPECT_EQ(r.hits, 1000u);
  EXPECT_EQ(r.mean_T, 2.0);
  EXPECT_EQ(r.var_T, 0.0);
  EXPECT_EQ(r.mean_N, 2.0);
}

TEST(Simulate, ParityNeverHits) {
  SimResult r = simulate(Game{DieSpec::parse("2:1,4:1"), PredicateSpec::odd(), 0}, 1000, 50, 1);
  EXPECT_EQ(r.hits, 0u);
  EXPECT_EQ(r.hit_fraction, 0.0);
}

TEST(Simulate, HitFractionMatchesExactAbsorbedMass) {
  for (std::uint64_t cap : {1u, 2u, 5u}) {
    const double a = run(GameSpec{fair_prime(), FixedRounds{cap}}).absorbed_mass().get_d();
    const std::uint64_t n = 200000;
    SimResult r = simulate(fair_prime(), n, cap, 100 + cap);
    const double se = std::sqrt(a * (1 - a) / static_cast<double>(n));
    EXPECT_NEAR(r.hit_fraction, a, 4 * se) << "cap " << cap;
  }
}

TEST(Simulate, MeanWithinFourStandardErrors) {
  Trace t = run(GameSpec{fair_prime(), FixedRounds{400}});
  Summary s = summarize(t, 20);
  const double mean = s.M.value.get_d();
  const double var = s.var_T.value.get_d();
  const std::uint64_t n = 1000000;
  SimResult r = simulate(fair_prime(), n, 400, 2024, 4);
  EXPECT_NEAR(r.mean_T, mean, 4 * std::sqrt(var / static_cast<double>(n)));
  EXPECT_NEAR(r.var_T, var, 0.1);
  EXPECT_NEAR(r.mean_N, s.L_abs.value.get_d(), 0.05);
}

TEST(Simulate, StartOnHit) {
  Game g{DieSpec::fair(6), PredicateSpec::prime(), 2};
  EXPECT_THROW(simulate(g, 10, 10, 1), InvalidStart);
  g.allow_trivial_start = true;
  SimResult r = simulate(g, 10, 10, 1);
  EXPECT_EQ(r.hits, 10u);
  EXPECT_EQ(r.mean_T, 0.0);
  EXPECT_EQ(r.mean_N, 2.0);
}

TEST(Simulate, RejectsZeroTrialsOrCap) {
  EXPECT_THROW(simulate(fair_prime(), 0, 10, 1), InvalidArgument);
  EXPECT_THROW(simulate(fair_prime(), 10, 0, 1), InvalidArgument);
}

TEST(UniformBelow, CoversRangeEvenly) {
  std::mt19937_64 gen(5);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[detail::uniform_below(gen, 7)];
  for (int c : counts) EXPECT_NEAR(c, n / 7, 4 * std::sqrt(n / 7.0));
  EXPECT_EQ(detail::uniform_below(gen, 1), 0u);
}

TEST(Splitmix, DistinctStreams) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t b = 0; b < 1000; ++b) seen.insert(detail::splitmix64(b));
  EXPECT_EQ(seen.size(), 1000u);
}

}  // namespace
}  // namespace dicehit
