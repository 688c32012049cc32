#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dicehit {

enum class PredicateKind {
  kPrime,
  kDistinctPrimeProduct,
  kPerfectSquare,
  kOdd,
  kEven,
  kNever,
};

/// The number class that ends the game.
///
/// DistinctPrimeProduct(k) means squarefree with exactly k prime factors,
/// so 12 = 2^2 * 3 is not a product of two distinct primes. Odd, Even and
/// Never exist for exercising the engine.
class PredicateSpec {
 public:
  static PredicateSpec prime() { return PredicateSpec(PredicateKind::kPrime, 0); }
  static PredicateSpec distinct_prime_product(unsigned k);
  static PredicateSpec perfect_square() { return PredicateSpec(PredicateKind::kPerfectSquare, 0); }
  static PredicateSpec odd() { return PredicateSpec(PredicateKind::kOdd, 0); }
  static PredicateSpec even() { return PredicateSpec(PredicateKind::kEven, 0); }
  static PredicateSpec never() { return PredicateSpec(PredicateKind::kNever, 0); }

  /// Accepts `prime`, `semiprime`, `distinct-prime-product:K`,
  /// `perfect-square`, `odd`, `even`, `never`.
  static PredicateSpec parse(std::string_view text);

  PredicateKind kind() const { return kind_; }
  /// k for DistinctPrimeProduct, 0 otherwise.
  unsigned order() const { return order_; }
  bool needs_sieve() const;
  /// Canonical CLI spelling.
  std::string name() const;

  bool operator==(const PredicateSpec&) const = default;

 private:
  PredicateSpec(PredicateKind kind, unsigned order) : kind_(kind), order_(order) {}

  PredicateKind kind_;
  unsigned order_;
};

/// Smallest-prime-factor table over [2, limit], built by a linear sieve.
class FactorSieve {
 public:
  explicit FactorSieve(std::uint64_t limit);

  std::uint64_t limit() const { return limit_; }
  /// Throws SieveTooSmall when n > limit; n must be >= 2.
  std::uint32_t smallest_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;
  /// Number of distinct prime factors if n is squarefree, -1 otherwise.
  /// Returns 0 for n = 1 and -1 for n = 0.
  int squarefree_omega(std::uint64_t n) const;

 private:
  std::uint64_t limit_;
  std::vector<std::uint32_t> spf_;
};

FactorSieve build_sieve(std::uint64_t limit);

std::uint64_t isqrt(std::uint64_t n);

bool is_hit(std::uint64_t n, const PredicateSpec& pred, const FactorSieve& sieve);
/// Sieve-free predicates only (perfect-square, odd, even, never).
bool is_hit(std::uint64_t n, const PredicateSpec& pred);

/// Precomputed membership flags for every integer in [0, limit].
class HitTable {
 public:
  HitTable(const PredicateSpec& pred, std::uint64_t limit);

  const PredicateSpec& predicate() const { return pred_; }
  std::uint64_t limit() const { return flags_.size() - 1; }
  bool contains(std::uint64_t n) const {
    if (n >= flags_.size()) throw_too_small(n);
    return flags_[n] != 0;
  }

 private:
  [[noreturn]] void throw_too_small(std::uint64_t n) const;

  PredicateSpec pred_;
  std::vector<std::uint8_t> flags_;
};

}  // namespace dicehit
