#include "dicehit/predicates.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "dicehit/errors.hpp"

namespace dicehit {

PredicateSpec PredicateSpec::distinct_prime_product(unsigned k) {
  if (k < 2) {
    throw InvalidArgument("distinct-prime-product requires k >= 2, got " +
                          std::to_string(k));
  }
  return PredicateSpec(PredicateKind::kDistinctPrimeProduct, k);
}

PredicateSpec PredicateSpec::parse(std::string_view text) {
  if (text == "prime") return prime();
  if (text == "semiprime") return distinct_prime_product(2);
  if (text == "perfect-square") return perfect_square();
  if (text == "odd") return odd();
  if (text == "even") return even();
  if (text == "never") return never();

  constexpr std::string_view kDpp = "distinct-prime-product:";
  if (text.starts_with(kDpp)) {
    auto digits = text.substr(kDpp.size());
    unsigned k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw InvalidArgument("bad distinct-prime-product order in '" + std::string(text) + "'");
    }
    return distinct_prime_product(k);
  }
  throw InvalidArgument("unknown predicate '" + std::string(text) + "'");
}

bool PredicateSpec::needs_sieve() const {
  return kind_ == PredicateKind::kPrime || kind_ == PredicateKind::kDistinctPrimeProduct;
}

std::string PredicateSpec::name() const {
  switch (kind_) {
    case PredicateKind::kPrime:
      return "prime";
    case PredicateKind::kDistinctPrimeProduct:
      return "distinct-prime-product:" + std::to_string(order_);
    case PredicateKind::kPerfectSquare:
      return "perfect-square";
    case PredicateKind::kOdd:
      return "odd";
    case PredicateKind::kEven:
      return "even";
    case PredicateKind::kNever:
      return "never";
  }
  return "unknown";
}

FactorSieve::FactorSieve(std::uint64_t limit) : limit_(limit) {
  if (limit < 2) {
    throw InvalidArgument("sieve limit must be >= 2, got " + std::to_string(limit));
  }
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("sieve limit " + std::to_string(limit) + " exceeds 2^32 - 1");
  }
  spf_.assign(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    // Each composite is struck exactly once, by its smallest prime factor.
    for (std::uint32_t p : primes) {
      if (p > spf_[i] || i * p > limit) break;
      spf_[i * p] = p;
    }
  }
}

std::uint32_t FactorSieve::smallest_factor(std::uint64_t n) const {
  if (n > limit_) {
    throw SieveTooSmall("integer " + std::to_string(n) + " exceeds sieve limit " +
                        std::to_string(limit_));
  }
  if (n < 2) throw InvalidArgument("smallest_factor requires n >= 2");
  return spf_[n];
}

bool FactorSieve::is_prime(std::uint64_t n) const {
  return n >= 2 && smallest_factor(n) == n;
}

int FactorSieve::squarefree_omega(std::uint64_t n) const {
  if (n == 0) return -1;
  int count = 0;
  while (n > 1) {
    std::uint32_t p = smallest_factor(n);
    n /= p;
    if (n % p == 0) return -1;
    ++count;
  }
  return count;
}

FactorSieve build_sieve(std::uint64_t limit) { return FactorSieve(limit); }

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && (r > n / r)) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

bool is_hit(std::uint64_t n, const PredicateSpec& pred) {
  switch (pred.kind()) {
    case PredicateKind::kPerfectSquare: {
      std::uint64_t r = isqrt(n);
      return r * r == n;
    }
    case PredicateKind::kOdd:
      return n % 2 == 1;
    case PredicateKind::kEven:
      return n % 2 == 0;
    case PredicateKind::kNever:
      return false;
    default:
      throw InvalidArgument("predicate '" + pred.name() + "' needs a factor sieve");
  }
}

bool is_hit(std::uint64_t n, const PredicateSpec& pred, const FactorSieve& sieve) {
  switch (pred.kind()) {
    case PredicateKind::kPrime:
      if (n < 2) return false;
      return sieve.is_prime(n);
    case PredicateKind::kDistinctPrimeProduct:
      if (n < 2) return false;
      return sieve.squarefree_omega(n) == static_cast<int>(pred.order());
    default:
      return is_hit(n, pred);
  }
}

HitTable::HitTable(const PredicateSpec& pred, std::uint64_t limit)
    : pred_(pred), flags_(limit + 1, 0) {
  if (pred.needs_sieve()) {
    FactorSieve sieve(std::max<std::uint64_t>(limit, 2));
    for (std::uint64_t n = 0; n <= limit; ++n) flags_[n] = is_hit(n, pred, sieve);
  } else if (pred.kind() == PredicateKind::kPerfectSquare) {
    for (std::uint64_t r = 0; r * r <= limit; ++r) flags_[r * r] = 1;
  } else {
    for (std::uint64_t n = 0; n <= limit; ++n) flags_[n] = is_hit(n, pred);
  }
}

void HitTable::throw_too_small(std::uint64_t n) const {
  throw SieveTooSmall("integer " + std::to_string(n) + " exceeds hit table limit " +
                      std::to_string(limit()));
}

}  // namespace dicehit
