#include "dicehit/stats.hpp"

#include <algorithm>

#include "dicehit/decimal.hpp"
#include "dicehit/errors.hpp"

namespace dicehit {

namespace {

ExactValue exact(mpq_class v, unsigned digits) {
  std::string text = render_decimal(v, digits);
  return {std::move(v), std::move(text)};
}

RootValue root(int sign, mpq_class square, unsigned digits) {
  std::string text = render_sqrt_decimal(square, sign, digits);
  return {sign, std::move(square), std::move(text)};
}

mpq_class ratio(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

mpq_class conditional_mean_duration(const Trace& trace) {
  if (sgn(trace.sums.duration[0]) == 0) throw NoHits("no game finished within the rounds played");
  return ratio(trace.sums.duration[1], trace.sums.duration[0]);
}

mpq_class conditional_mean_location(const Trace& trace) {
  if (sgn(trace.sums.duration[0]) == 0) throw NoHits("no game finished within the rounds played");
  return ratio(trace.sums.location, trace.sums.duration[0]);
}

Summary summarize(const Trace& trace, unsigned digits) {
  const MomentSums& s = trace.sums;
  const mpz_class& hits = s.duration[0];
  if (sgn(hits) == 0) throw NoHits("no game finished within the rounds played");

  // Conditional moments are ratios of numerators sharing W^R.
  const mpq_class m1 = ratio(s.duration[1], hits);
  const mpq_class m2 = ratio(s.duration[2], hits);
  const mpq_class m3 = ratio(s.duration[3], hits);
  const mpq_class m4 = ratio(s.duration[4], hits);
  const mpq_class loc = ratio(s.location, hits);
  const mpq_class loc2 = ratio(s.location_sq, hits);
  const mpq_class mixed = ratio(s.duration_location, hits);

  const mpq_class var_t = m2 - m1 * m1;
  const mpq_class mu3 = m3 - 3 * m1 * m2 + 2 * m1 * m1 * m1;
  const mpq_class mu4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
  const mpq_class var_n = loc2 - loc * loc;
  const mpq_class cov = mixed - m1 * loc;

  const mpq_class a = trace.absorbed_mass();
  Summary out{
      trace.R,
      digits,
      exact(a, digits),
      exact(1 - a, digits),
      exact(m1, digits),
      exact(loc, digits),
      exact(loc - mpq_class(mpz_class(static_cast<unsigned long>(trace.game.init))), digits),
      exact(var_t, digits),
      std::nullopt,
      std::nullopt,
      exact(var_n, digits),
      exact(cov, digits),
      std::nullopt,
      exact(trace.duration_sum(1), digits),
  };

  if (sgn(var_t) > 0) {
    out.skew_T = root(sgn(mu3), mpq_class(mu3 * mu3 / (var_t * var_t * var_t)), digits);
    out.kurt_T = exact(mpq_class(mu4 / (var_t * var_t)), digits);
    if (sgn(var_n) > 0) {
      out.corr = root(sgn(cov), mpq_class(cov * cov / (var_t * var_n)), digits);
    }
  }
  return out;
}

ConstantEstimate estimate_constant(const Game& game, unsigned digits, std::uint64_t r0,
                                   Quantity quantity, std::uint64_t r_cap) {
  if (digits < 1) throw InvalidArgument("digits must be >= 1");
  if (r0 < 1) throw InvalidArgument("r0 must be >= 1");
  if (r_cap < 2 * r0) throw InvalidArgument("r_cap must be at least 2 * r0");

  const unsigned shown = digits + 2;
  auto value_at = [&](const Trace& trace) {
    return quantity == Quantity::kDuration ? conditional_mean_duration(trace)
                                           : conditional_mean_location(trace);
  };

  GameEngine engine(game, 2 * r0);
  if (engine.trace().trivial_start) {
    return {render_decimal(value_at(engine.trace()), digits), 0, 0, digits, true};
  }
  auto advance_to = [&](std::uint64_t R) {
    while (engine.round() < R) engine.step();
  };

  std::uint64_t R = r0;
  advance_to(R);
  std::string previous = sgn(engine.trace().sums.duration[0]) == 0
                             ? std::string()
                             : render_decimal(value_at(engine.trace()), shown);
  ConstantEstimate est{"", R, 2 * R, 0, false};
  while (2 * R <= r_cap) {
    advance_to(2 * R);
    if (sgn(engine.trace().sums.duration[0]) == 0) {
      throw NoHits("no game finished within " + std::to_string(2 * R) + " rounds");
    }
    const mpq_class v = value_at(engine.trace());
    const std::string current = render_decimal(v, shown);
    est.rounds = R;
    est.confirm_rounds = 2 * R;
    est.agreed_digits = previous.empty() ? 0 : common_significant_digits(previous, current);
    est.value = render_decimal(v, digits);
    if (est.agreed_digits >= digits + 1) {
      est.converged = true;
      return est;
    }
    previous = current;
    R *= 2;
  }
  if (!est.value.empty()) {
    const unsigned partial = static_cast<unsigned>(std::max<std::size_t>(est.agreed_digits, 1));
    est.value = render_decimal(value_at(engine.trace()), std::min(partial, digits));
  }
  return est;
}

}  // namespace dicehit
