#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "dicehit/pgf_text.hpp"
#include "dicehit/poly.hpp"
#include "dicehit/predicates.hpp"

namespace dicehit {

/// A game without a stopping rule: die, target class, starting sum.
struct Game {
  DieSpec die;
  PredicateSpec pred;
  std::uint64_t init = 0;
  /// Permit a start that already satisfies the predicate (duration 0).
  bool allow_trivial_start = false;
};

struct FixedRounds {
  std::uint64_t rounds;
};

/// Stop at the first round whose survivor mass is <= eps, or at r_max.
struct TailTarget {
  mpq_class eps;
  std::uint64_t r_max;
};

using StopRule = std::variant<FixedRounds, TailTarget>;

struct GameSpec {
  Game game;
  StopRule stop;
};

/// Round k aggregates, all numerators over W^k.
struct RoundRecord {
  std::uint64_t k;
  mpz_class hit_mass_num;  ///< N_k(1)
  mpz_class loc1_num;      ///< sum_n n q(k, n)
  mpz_class loc2_num;      ///< sum_n n^2 q(k, n)
  mpz_class survivor_num;  ///< S_k(1)
};

/// Running sums over rounds 1..R, all numerators over W^R.
struct MomentSums {
  std::array<mpz_class, 5> duration;  ///< sum_k k^j m0_k, j = 0..4
  mpz_class location;                 ///< sum_k m1_k
  mpz_class location_sq;              ///< sum_k m2_k
  mpz_class duration_location;        ///< sum_k k m1_k
};

struct Trace {
  explicit Trace(Game g) : game(std::move(g)) {}

  Game game;
  std::vector<RoundRecord> rounds;
  std::uint64_t R = 0;
  mpz_class denominator = 1;  ///< W^R
  MomentSums sums;
  mpz_class survivor_num = 1;
  /// False when a tail target was not reached within r_max.
  bool converged = true;
  /// The start already satisfied the predicate and the game took 0 rounds.
  bool trivial_start = false;

  mpq_class survivor_mass() const;
  /// a_R = sum_k m0_k.
  mpq_class absorbed_mass() const;
  /// sum_k k^j m0_k.
  mpq_class duration_sum(unsigned j) const;
  mpq_class location_sum() const;
  mpq_class location_sq_sum() const;
  mpq_class duration_location_sum() const;
  mpq_class survivor_mass_at(std::uint64_t k) const;
};

/// Round-by-round driver. Each step convolves the survivors with the die,
/// peels off the inductees and folds them into the running sums.
class GameEngine {
 public:
  /// `round_hint` sizes the predicate table; it grows if exceeded.
  /// Throws InvalidStart if init satisfies the predicate and the game does
  /// not allow a trivial start.
  GameEngine(Game game, std::uint64_t round_hint, bool keep_inductees = false);

  /// Advances one round. No-op on a trivial start.
  const RoundRecord& step();

  std::uint64_t round() const { return trace_.R; }
  const Trace& trace() const { return trace_; }
  Trace take_trace() &&;
  /// S_k as a polynomial (copy).
  ScaledPoly survivors() const;
  /// N_k of the latest round; only tracked when keep_inductees is set.
  const ScaledPoly& last_inductees() const { return last_inductees_; }
  bool absorbed() const { return live_len_ == 0; }

 private:
  void ensure_table(std::uint64_t max_sum);

  Trace trace_;
  bool keep_inductees_;
  HitTable table_;
  std::uint64_t table_rounds_;
  std::uint64_t live_lo_;
  std::size_t live_len_ = 0;
  std::vector<mpz_class> live_;
  std::vector<mpz_class> scratch_;
  ScaledPoly last_inductees_;
};

/// Runs rounds under the given stopping rule.
Trace run(const GameSpec& spec);

/// N_1 .. N_R.
std::vector<PgfSlice> truncated_pgf(const Game& game, std::uint64_t R);

struct Guarantee {
  bool converged;
  /// Smallest R with S_R(1) <= eps, or r_max when not converged.
  std::uint64_t rounds;
  mpq_class survivor_mass;
  Trace trace;
};

/// Smallest R with S_R(1) <= eps in (0, 1), from one incremental run.
Guarantee rounds_to_guarantee(const Game& game, const mpq_class& eps, std::uint64_t r_max);

/// Floating-point survivor-probability DP giving E_K = sum_{k<K} P(T > k),
/// the expected duration truncated at K rounds. Cross-check only; rounding
/// is uncontrolled.
double dp_reference(const Game& game, std::uint64_t K);

}  // namespace dicehit
