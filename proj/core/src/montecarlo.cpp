#include "dicehit/montecarlo.hpp"

#include <algorithm>
#include <thread>
#include <vector>

#include "dicehit/errors.hpp"

namespace dicehit {

namespace detail {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  // Reject the low 2^64 mod bound values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = gen();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace detail

namespace {

constexpr std::uint64_t kBlockTrials = 1 << 14;

__extension__ typedef unsigned __int128 Wide;

struct Tally {
  std::uint64_t hits = 0;
  std::uint64_t sum_t = 0;
  Wide sum_t2 = 0;
  Wide sum_n = 0;

  void merge(const Tally& o) {
    hits += o.hits;
    sum_t += o.sum_t;
    sum_t2 += o.sum_t2;
    sum_n += o.sum_n;
  }
};

Tally run_block(const Game& game, const HitTable& table, const std::vector<std::uint64_t>& cumulative,
                std::uint64_t count, std::uint64_t cap, std::uint64_t stream_seed) {
  std::mt19937_64 gen(stream_seed);
  const auto faces = game.die.faces();
  const std::uint64_t total = game.die.total_weight();
  Tally t;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t sum = game.init;
    for (std::uint64_t k = 1; k <= cap; ++k) {
      const std::uint64_t draw = detail::uniform_below(gen, total);
      const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), draw);
      sum += faces[static_cast<std::size_t>(it - cumulative.begin())].value;
      if (table.contains(sum)) {
        ++t.hits;
        t.sum_t += k;
        t.sum_t2 += static_cast<Wide>(k) * k;
        t.sum_n += sum;
        break;
      }
    }
  }
  return t;
}

}  // namespace

SimResult simulate(const Game& game, std::uint64_t trials, std::uint64_t cap,
                   std::uint64_t seed, unsigned workers) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (cap < 1) throw InvalidArgument("cap must be >= 1");

  HitTable table(game.pred, game.init + game.die.max_face() * cap);
  SimResult result;
  result.trials = trials;
  result.seed = seed;
  result.generator = kGeneratorName;

  if (table.contains(game.init)) {
    if (!game.allow_trivial_start) {
      throw InvalidStart("starting sum " + std::to_string(game.init) + " already satisfies '" +
                         game.pred.name() + "'");
    }
    result.hits = trials;
    result.mean_N = static_cast<double>(game.init);
    result.hit_fraction = 1.0;
    return result;
  }

  std::vector<std::uint64_t> cumulative;
  std::uint64_t acc = 0;
  for (const Face& f : game.die.faces()) cumulative.push_back(acc += f.weight);

  const std::uint64_t blocks = (trials + kBlockTrials - 1) / kBlockTrials;
  std::vector<Tally> tallies(blocks);
  auto do_block = [&](std::uint64_t b) {
    const std::uint64_t count = std::min(kBlockTrials, trials - b * kBlockTrials);
    tallies[b] = run_block(game, table, cumulative, count, cap,
                           detail::splitmix64(seed ^ detail::splitmix64(b)));
  };

  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) do_block(b);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < blocks; b += workers) do_block(b);
      });
    }
    for (auto& th : pool) th.join();
  }

  Tally total;
  for (const auto& t : tallies) total.merge(t);

  result.hits = total.hits;
  result.hit_fraction = static_cast<double>(total.hits) / static_cast<double>(trials);
  if (total.hits > 0) {
    const auto n = static_cast<long double>(total.hits);
    const long double mean = static_cast<long double>(total.sum_t) / n;
    result.mean_T = static_cast<double>(mean);
    result.mean_N = static_cast<double>(static_cast<long double>(total.sum_n) / n);
    if (total.hits > 1) {
      const long double ss = static_cast<long double>(total.sum_t2) - n * mean * mean;
      result.var_T = static_cast<double>(std::max(0.0L, ss / (n - 1)));
    }
  }
  return result;
}

}  // namespace dicehit
