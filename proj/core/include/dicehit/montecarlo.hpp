#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "dicehit/engine.hpp"

namespace dicehit {

struct SimResult {
  std::uint64_t trials = 0;
  /// Trials that hit within the cap.
  std::uint64_t hits = 0;
  double mean_T = 0.0;
  /// Sample variance (n - 1 denominator) of the duration over hitting trials.
  double var_T = 0.0;
  double mean_N = 0.0;
  double hit_fraction = 0.0;
  std::uint64_t seed = 0;
  std::string generator;
};

/// Name recorded in SimResult::generator.
inline constexpr const char* kGeneratorName =
    "mt19937_64, per-block seeds from splitmix64(seed, block), rejection-sampled faces";

/// Trials are grouped in fixed blocks, each with its own stream, so the
/// result depends only on (game, trials, cap, seed), not on `workers`.
SimResult simulate(const Game& game, std::uint64_t trials, std::uint64_t cap,
                   std::uint64_t seed, unsigned workers = 1);

namespace detail {

std::uint64_t splitmix64(std::uint64_t x);

/// Uniform integer in [0, bound) by rejection, independent of the
/// standard library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound);

}  // namespace detail

}  // namespace dicehit
