#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dicehit/predicates.hpp"

namespace dicehit {

struct Face {
  std::uint64_t value;
  std::uint64_t weight;

  bool operator==(const Face&) const = default;
};

/// A die with positive integer face values and positive integer weights.
/// Face i comes up with probability weight_i / W, W the total weight.
class DieSpec {
 public:
  /// Faces 1..n, each with weight 1.
  static DieSpec fair(std::uint64_t n);
  /// Faces must be distinct and >= 1, weights >= 1. Stored sorted by value.
  static DieSpec loaded(std::vector<Face> faces);
  /// `v1:w1,v2:w2,...`
  static DieSpec parse(std::string_view text);

  std::span<const Face> faces() const { return faces_; }
  std::uint64_t total_weight() const { return total_weight_; }
  std::uint64_t min_face() const { return faces_.front().value; }
  std::uint64_t max_face() const { return faces_.back().value; }
  /// True when the values form a contiguous run and all weights agree,
  /// which lets convolution use a sliding window.
  bool is_uniform_run() const;
  /// `fair:n` for fair dice, the `v:w,...` list otherwise.
  std::string describe() const;

  bool operator==(const DieSpec&) const = default;

 private:
  DieSpec() = default;

  std::vector<Face> faces_;
  std::uint64_t total_weight_ = 0;
};

/// (sum_j coeffs[j] x^(lo + j)) / base^scale with nonnegative integer
/// coefficients. The zero polynomial has no coefficients.
class ScaledPoly {
 public:
  ScaledPoly() = default;
  ScaledPoly(std::uint64_t base, std::uint64_t lo, std::vector<mpz_class> coeffs,
             unsigned scale);

  /// x^exponent / base^scale.
  static ScaledPoly monomial(std::uint64_t base, std::uint64_t exponent, unsigned scale = 0);
  static ScaledPoly zero(std::uint64_t base, unsigned scale = 0);

  std::uint64_t base() const { return base_; }
  std::uint64_t lo() const { return lo_; }
  /// Largest exponent; meaningless for the zero polynomial.
  std::uint64_t hi() const { return lo_ + coeffs_.size() - 1; }
  unsigned scale() const { return scale_; }
  std::span<const mpz_class> coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  /// Numerator of the coefficient of x^n (zero outside the window).
  mpz_class numerator(std::uint64_t n) const;
  /// Exact coefficient of x^n.
  mpq_class coefficient(std::uint64_t n) const;
  /// Sum of the numerators, i.e. the polynomial at x = 1 times base^scale.
  mpz_class numerator_sum() const;

  bool operator==(const ScaledPoly&) const = default;

 private:
  void normalize();

  std::uint64_t base_ = 1;
  std::uint64_t lo_ = 0;
  std::vector<mpz_class> coeffs_;
  unsigned scale_ = 0;
};

/// sum_i weight_i x^value_i at scale 1.
ScaledPoly die_pgf(const DieSpec& die);

/// General product; both operands must share the same base.
ScaledPoly convolve(const ScaledPoly& a, const ScaledPoly& b);

/// Product with the die PGF using one multiply-add per face per coefficient
/// (or a sliding window for uniform dice). Equal to convolve(p, die_pgf(die)).
ScaledPoly multiply_by_die(const ScaledPoly& p, const DieSpec& die);

struct SplitPoly {
  ScaledPoly hits;
  ScaledPoly survivors;
};

/// Projects p onto the exponents satisfying the predicate (hits) and the rest.
SplitPoly split_by_predicate(const ScaledPoly& p, const PredicateSpec& pred,
                             const FactorSieve& sieve);
SplitPoly split_by_predicate(const ScaledPoly& p, const HitTable& table);

/// p(1), exact.
mpq_class mass(const ScaledPoly& p);

/// sum_n n^r coeff_n, exact. r = 0 is the mass.
mpq_class location_moment(const ScaledPoly& p, unsigned r);

/// base^exponent as a big integer.
mpz_class power(std::uint64_t base, std::uint64_t exponent);

namespace detail {

/// out[j] = sum_f weight_f * in[j - (value_f - min_face)] for j in
/// [0, in.size() + max_face - min_face). `out` is resized and existing
/// limbs are reused. With `allow_window` a uniform die takes the
/// sliding-window path.
void die_shift_accumulate(std::span<const mpz_class> in, const DieSpec& die,
                          std::vector<mpz_class>& out, bool allow_window = true);

}  // namespace detail

}  // namespace dicehit
