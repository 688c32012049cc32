#include "dicehit/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "dicehit/errors.hpp"

namespace dicehit {

namespace {

mpq_class over(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::uint64_t table_limit(const Game& game, std::uint64_t rounds) {
  return game.init + game.die.max_face() * std::max<std::uint64_t>(rounds, 1);
}

}  // namespace

mpq_class Trace::survivor_mass() const { return over(survivor_num, denominator); }
mpq_class Trace::absorbed_mass() const { return over(sums.duration[0], denominator); }

mpq_class Trace::duration_sum(unsigned j) const {
  if (j >= sums.duration.size()) throw InvalidArgument("duration moments are tracked up to order 4");
  return over(sums.duration[j], denominator);
}

mpq_class Trace::location_sum() const { return over(sums.location, denominator); }
mpq_class Trace::location_sq_sum() const { return over(sums.location_sq, denominator); }
mpq_class Trace::duration_location_sum() const { return over(sums.duration_location, denominator); }

mpq_class Trace::survivor_mass_at(std::uint64_t k) const {
  if (k == 0) return trivial_start ? mpq_class(0) : mpq_class(1);
  if (k > rounds.size()) throw InvalidArgument("round " + std::to_string(k) + " was not executed");
  return over(rounds[k - 1].survivor_num, power(game.die.total_weight(), k));
}

GameEngine::GameEngine(Game game, std::uint64_t round_hint, bool keep_inductees)
    : trace_(std::move(game)),
      keep_inductees_(keep_inductees),
      table_(trace_.game.pred, table_limit(trace_.game, round_hint)),
      table_rounds_(std::max<std::uint64_t>(round_hint, 1)),
      live_lo_(trace_.game.init) {
  const Game& g = trace_.game;
  last_inductees_ = ScaledPoly::zero(g.die.total_weight());
  if (table_.contains(g.init)) {
    if (!g.allow_trivial_start) {
      throw InvalidStart("starting sum " + std::to_string(g.init) + " already satisfies '" +
                         g.pred.name() + "'");
    }
    trace_.trivial_start = true;
    trace_.survivor_num = 0;
    trace_.sums.duration[0] = 1;
    trace_.sums.location = mpz_class(static_cast<unsigned long>(g.init));
    trace_.sums.location_sq = trace_.sums.location * trace_.sums.location;
    return;
  }
  live_.emplace_back(1);
  live_len_ = 1;
}

void GameEngine::ensure_table(std::uint64_t max_sum) {
  if (max_sum <= table_.limit()) return;
  while (table_limit(trace_.game, table_rounds_) < max_sum) table_rounds_ *= 2;
  table_ = HitTable(trace_.game.pred, table_limit(trace_.game, table_rounds_));
}

const RoundRecord& GameEngine::step() {
  if (trace_.trivial_start) throw std::logic_error("cannot step a game that started on a hit");
  const DieSpec& die = trace_.game.die;
  const unsigned long base = die.total_weight();
  const std::uint64_t k = trace_.R + 1;

  RoundRecord rec{k, 0, 0, 0, 0};
  std::vector<mpz_class> inductees;
  std::uint64_t new_lo = live_lo_ + die.min_face();

  if (live_len_ > 0) {
    ensure_table(live_lo_ + live_len_ - 1 + die.max_face());
    detail::die_shift_accumulate(std::span<const mpz_class>(live_.data(), live_len_), die,
                                 scratch_);
    if (keep_inductees_) inductees.resize(scratch_.size());

    mpz_class weighted;
    for (std::size_t j = 0; j < scratch_.size(); ++j) {
      mpz_class& c = scratch_[j];
      const std::uint64_t n = new_lo + j;
      if (sgn(c) == 0 || !table_.contains(n)) continue;
      rec.hit_mass_num += c;
      mpz_mul_ui(weighted.get_mpz_t(), c.get_mpz_t(), n);
      rec.loc1_num += weighted;
      mpz_addmul_ui(rec.loc2_num.get_mpz_t(), weighted.get_mpz_t(), n);
      if (keep_inductees_) {
        inductees[j].swap(c);
      }
      c = 0;
    }

    // Trim the zero borders by narrowing the live window.
    std::size_t first = 0;
    std::size_t last = scratch_.size();
    while (first < last && sgn(scratch_[first]) == 0) ++first;
    while (last > first && sgn(scratch_[last - 1]) == 0) --last;
    live_.swap(scratch_);
    if (first > 0) {
      std::rotate(live_.begin(), live_.begin() + static_cast<std::ptrdiff_t>(first),
                  live_.begin() + static_cast<std::ptrdiff_t>(last));
    }
    live_len_ = last - first;
    live_lo_ = new_lo + first;
  } else {
    live_lo_ = new_lo;
  }

  trace_.survivor_num = trace_.survivor_num * base - rec.hit_mass_num;
  rec.survivor_num = trace_.survivor_num;

  MomentSums& s = trace_.sums;
  mpz_class kpow = 1;
  for (auto& d : s.duration) {
    mpz_mul_ui(d.get_mpz_t(), d.get_mpz_t(), base);
    mpz_addmul(d.get_mpz_t(), kpow.get_mpz_t(), rec.hit_mass_num.get_mpz_t());
    mpz_mul_ui(kpow.get_mpz_t(), kpow.get_mpz_t(), k);
  }
  mpz_mul_ui(s.location.get_mpz_t(), s.location.get_mpz_t(), base);
  s.location += rec.loc1_num;
  mpz_mul_ui(s.location_sq.get_mpz_t(), s.location_sq.get_mpz_t(), base);
  s.location_sq += rec.loc2_num;
  mpz_mul_ui(s.duration_location.get_mpz_t(), s.duration_location.get_mpz_t(), base);
  mpz_addmul_ui(s.duration_location.get_mpz_t(), rec.loc1_num.get_mpz_t(), k);
  mpz_mul_ui(trace_.denominator.get_mpz_t(), trace_.denominator.get_mpz_t(), base);

  if (keep_inductees_) {
    last_inductees_ = ScaledPoly(base, new_lo, std::move(inductees), static_cast<unsigned>(k));
  }

  trace_.R = k;
  trace_.rounds.push_back(std::move(rec));
  return trace_.rounds.back();
}

Trace GameEngine::take_trace() && { return std::move(trace_); }

ScaledPoly GameEngine::survivors() const {
  std::vector<mpz_class> coeffs(live_.begin(),
                                live_.begin() + static_cast<std::ptrdiff_t>(live_len_));
  return ScaledPoly(trace_.game.die.total_weight(), live_lo_, std::move(coeffs),
                    static_cast<unsigned>(trace_.R));
}

namespace {

bool within_tail(const Trace& trace, const mpq_class& eps) {
  // survivor_num / W^R <= eps_num / eps_den
  return trace.survivor_num * eps.get_den() <= eps.get_num() * trace.denominator;
}

}  // namespace

Trace run(const GameSpec& spec) {
  return std::visit(
      [&](const auto& stop) -> Trace {
        using Stop = std::decay_t<decltype(stop)>;
        if constexpr (std::is_same_v<Stop, FixedRounds>) {
          if (stop.rounds < 1) throw InvalidArgument("rounds must be >= 1");
          GameEngine engine(spec.game, stop.rounds);
          if (engine.trace().trivial_start) return std::move(engine).take_trace();
          while (engine.round() < stop.rounds) engine.step();
          return std::move(engine).take_trace();
        } else {
          if (sgn(stop.eps) <= 0) throw InvalidArgument("tail target eps must be positive");
          if (stop.r_max < 1) throw InvalidArgument("r_max must be >= 1");
          GameEngine engine(spec.game, stop.r_max);
          if (engine.trace().trivial_start) return std::move(engine).take_trace();
          while (engine.round() < stop.r_max) {
            engine.step();
            if (within_tail(engine.trace(), stop.eps)) return std::move(engine).take_trace();
          }
          Trace trace = std::move(engine).take_trace();
          trace.converged = false;
          return trace;
        }
      },
      spec.stop);
}

std::vector<PgfSlice> truncated_pgf(const Game& game, std::uint64_t R) {
  if (R < 1) throw InvalidArgument("rounds must be >= 1");
  GameEngine engine(game, R, /*keep_inductees=*/true);
  std::vector<PgfSlice> slices;
  if (engine.trace().trivial_start) return slices;
  slices.reserve(R);
  while (engine.round() < R) {
    engine.step();
    slices.push_back({engine.round(), engine.last_inductees()});
  }
  return slices;
}

Guarantee rounds_to_guarantee(const Game& game, const mpq_class& eps, std::uint64_t r_max) {
  if (sgn(eps) <= 0 || eps >= 1) throw InvalidArgument("eps must lie in (0, 1)");
  Trace trace = run(GameSpec{game, TailTarget{eps, r_max}});
  Guarantee g{trace.converged, trace.R, trace.survivor_mass(), std::move(trace)};
  return g;
}

double dp_reference(const Game& game, std::uint64_t K) {
  if (K < 1) throw InvalidArgument("K must be >= 1");
  const DieSpec& die = game.die;
  HitTable table(game.pred, table_limit(game, K));
  if (table.contains(game.init)) {
    if (!game.allow_trivial_start) {
      throw InvalidStart("starting sum " + std::to_string(game.init) + " already satisfies '" +
                         game.pred.name() + "'");
    }
    return 0.0;
  }

  std::vector<double> prob;
  for (const Face& f : die.faces()) {
    prob.push_back(static_cast<double>(f.weight) / static_cast<double>(die.total_weight()));
  }

  // p[i] = probability the running sum is init + i with no hit so far.
  const std::size_t width = die.max_face() * K + 1;
  std::vector<double> p(width, 0.0);
  std::vector<double> next(width, 0.0);
  p[0] = 1.0;
  std::size_t lo = 0;
  std::size_t hi = 0;
  double expected = 0.0;
  for (std::uint64_t k = 1; k <= K; ++k) {
    double alive = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) alive += p[i];
    expected += alive;
    if (k == K) break;

    const std::size_t new_lo = lo + die.min_face();
    const std::size_t new_hi = hi + die.max_face();
    std::fill(next.begin() + static_cast<std::ptrdiff_t>(new_lo),
              next.begin() + static_cast<std::ptrdiff_t>(new_hi + 1), 0.0);
    for (std::size_t i = lo; i <= hi; ++i) {
      if (p[i] == 0.0) continue;
      for (std::size_t f = 0; f < prob.size(); ++f) next[i + die.faces()[f].value] += p[i] * prob[f];
    }
    for (std::size_t i = new_lo; i <= new_hi; ++i) {
      if (table.contains(game.init + i)) next[i] = 0.0;
    }
    std::fill(p.begin() + static_cast<std::ptrdiff_t>(lo), p.begin() + static_cast<std::ptrdiff_t>(hi + 1), 0.0);
    p.swap(next);
    lo = new_lo;
    hi = new_hi;
  }
  return expected;
}

}  // namespace dicehit
