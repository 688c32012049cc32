#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "dicehit/engine.hpp"

namespace dicehit {

/// An exact rational and its decimal rendering.
struct ExactValue {
  mpq_class value;
  std::string decimal;
};

/// sign * sqrt(square), for quantities like skewness and correlation whose
/// exact form involves a square root.
struct RootValue {
  int sign;
  mpq_class square;
  std::string decimal;
};

/// Conditional statistics of a trace, conditioned on finishing within R
/// rounds. Skewness is mu3 / sigma^3 and kurtosis mu4 / sigma^4 (not excess).
struct Summary {
  std::uint64_t R;
  unsigned digits;
  ExactValue a_R;
  ExactValue tail;
  ExactValue M;       ///< conditional mean duration
  ExactValue L_abs;   ///< conditional mean final sum
  ExactValue L_rel;   ///< L_abs - init
  ExactValue var_T;
  std::optional<RootValue> skew_T;
  std::optional<ExactValue> kurt_T;
  ExactValue var_N;
  ExactValue cov;
  std::optional<RootValue> corr;
  /// Unconditional partial expectation sum_k k m0_k.
  ExactValue partial_duration;
};

inline constexpr const char* kSkewConvention = "mu3/sigma^3";
inline constexpr const char* kKurtosisConvention = "mu4/sigma^4 (not excess; excess = kurt - 3)";

/// Throws NoHits when a_R = 0.
Summary summarize(const Trace& trace, unsigned digits);

/// Conditional mean duration M_R = sum k m0_k / a_R.
mpq_class conditional_mean_duration(const Trace& trace);
/// Conditional mean absolute final sum L_R.
mpq_class conditional_mean_location(const Trace& trace);

enum class Quantity { kDuration, kLocation };

struct ConstantEstimate {
  /// The rendering of the quantity at `digits` significant digits.
  std::string value;
  /// First R of the agreeing pair (R, 2R).
  std::uint64_t rounds;
  std::uint64_t confirm_rounds;
  /// Significant digits shared by the last compared pair.
  std::size_t agreed_digits;
  bool converged;
};

/// Doubles R from r0 until M_R and M_2R (or L_R, L_2R) agree on more than
/// `digits` significant digits, one digit of guard, or 2R would exceed r_cap.
ConstantEstimate estimate_constant(const Game& game, unsigned digits, std::uint64_t r0,
                                   Quantity quantity = Quantity::kDuration,
                                   std::uint64_t r_cap = 1u << 15);

}  // namespace dicehit
