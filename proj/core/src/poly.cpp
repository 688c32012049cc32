#include "dicehit/poly.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "dicehit/errors.hpp"

namespace dicehit {

namespace {

std::uint64_t parse_u64(std::string_view text, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

void check_same_base(const ScaledPoly& a, const ScaledPoly& b) {
  if (a.base() != b.base()) {
    throw InvalidArgument("polynomials over different bases " + std::to_string(a.base()) +
                          " and " + std::to_string(b.base()));
  }
}

}  // namespace

DieSpec DieSpec::fair(std::uint64_t n) {
  if (n < 1) throw InvalidArgument("a fair die needs at least one face");
  std::vector<Face> faces;
  faces.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) faces.push_back({i, 1});
  return loaded(std::move(faces));
}

DieSpec DieSpec::loaded(std::vector<Face> faces) {
  if (faces.empty()) throw InvalidArgument("a die needs at least one face");
  std::sort(faces.begin(), faces.end(),
            [](const Face& a, const Face& b) { return a.value < b.value; });
  DieSpec die;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    if (f.value < 1) throw InvalidArgument("face values must be >= 1");
    if (f.weight < 1) throw InvalidArgument("face weights must be >= 1");
    if (i > 0 && faces[i - 1].value == f.value) {
      throw InvalidArgument("duplicate face value " + std::to_string(f.value));
    }
    die.total_weight_ += f.weight;
  }
  die.faces_ = std::move(faces);
  return die;
}

DieSpec DieSpec::parse(std::string_view text) {
  std::vector<Face> faces;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto item = text.substr(0, comma);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("die face '" + std::string(item) + "' is not value:weight");
    }
    faces.push_back({parse_u64(item.substr(0, colon), "face value"),
                     parse_u64(item.substr(colon + 1), "face weight")});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
    if (text.empty()) throw InvalidArgument("trailing comma in die description");
  }
  return loaded(std::move(faces));
}

bool DieSpec::is_uniform_run() const {
  for (std::size_t i = 1; i < faces_.size(); ++i) {
    if (faces_[i].value != faces_[i - 1].value + 1) return false;
    if (faces_[i].weight != faces_[0].weight) return false;
  }
  return true;
}

std::string DieSpec::describe() const {
  if (is_uniform_run() && min_face() == 1 && faces_[0].weight == 1) {
    return "fair:" + std::to_string(faces_.size());
  }
  std::string out;
  for (const Face& f : faces_) {
    if (!out.empty()) out += ',';
    out += std::to_string(f.value) + ':' + std::to_string(f.weight);
  }
  return out;
}

ScaledPoly::ScaledPoly(std::uint64_t base, std::uint64_t lo, std::vector<mpz_class> coeffs,
                       unsigned scale)
    : base_(base), lo_(lo), coeffs_(std::move(coeffs)), scale_(scale) {
  if (base_ < 1) throw InvalidArgument("polynomial base must be >= 1");
  for (const auto& c : coeffs_) {
    if (sgn(c) < 0) throw InvalidArgument("polynomial coefficients must be nonnegative");
  }
  normalize();
}

ScaledPoly ScaledPoly::monomial(std::uint64_t base, std::uint64_t exponent, unsigned scale) {
  return ScaledPoly(base, exponent, {mpz_class(1)}, scale);
}

ScaledPoly ScaledPoly::zero(std::uint64_t base, unsigned scale) {
  return ScaledPoly(base, 0, {}, scale);
}

void ScaledPoly::normalize() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                            [](const mpz_class& c) { return sgn(c) != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    lo_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(),
                           [](const mpz_class& c) { return sgn(c) != 0; });
  coeffs_.erase(last.base(), coeffs_.end());
  lo_ += static_cast<std::uint64_t>(first - coeffs_.begin());
  coeffs_.erase(coeffs_.begin(), first);
}

mpz_class ScaledPoly::numerator(std::uint64_t n) const {
  if (is_zero() || n < lo_ || n > hi()) return 0;
  return coeffs_[n - lo_];
}

mpq_class ScaledPoly::coefficient(std::uint64_t n) const {
  mpq_class q(numerator(n), power(base_, scale_));
  q.canonicalize();
  return q;
}

mpz_class ScaledPoly::numerator_sum() const {
  mpz_class total = 0;
  for (const auto& c : coeffs_) total += c;
  return total;
}

mpz_class power(std::uint64_t base, std::uint64_t exponent) {
  mpz_class result;
  mpz_class b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(base), 0, 0, &base);
  mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
  return result;
}

ScaledPoly die_pgf(const DieSpec& die) {
  std::vector<mpz_class> coeffs(die.max_face() - die.min_face() + 1);
  for (const Face& f : die.faces()) {
    mpz_class w;
    mpz_import(w.get_mpz_t(), 1, 1, sizeof(f.weight), 0, 0, &f.weight);
    coeffs[f.value - die.min_face()] = w;
  }
  return ScaledPoly(die.total_weight(), die.min_face(), std::move(coeffs), 1);
}

ScaledPoly convolve(const ScaledPoly& a, const ScaledPoly& b) {
  check_same_base(a, b);
  unsigned scale = a.scale() + b.scale();
  if (a.is_zero() || b.is_zero()) return ScaledPoly::zero(a.base(), scale);
  std::vector<mpz_class> out(a.size() + b.size() - 1);
  auto ac = a.coeffs();
  auto bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (sgn(ac[i]) == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), ac[i].get_mpz_t(), bc[j].get_mpz_t());
    }
  }
  return ScaledPoly(a.base(), a.lo() + b.lo(), std::move(out), scale);
}

namespace detail {

void die_shift_accumulate(std::span<const mpz_class> in, const DieSpec& die,
                          std::vector<mpz_class>& out, bool allow_window) {
  const std::size_t spread = die.max_face() - die.min_face();
  const std::size_t n_out = in.empty() ? 0 : in.size() + spread;
  if (out.size() < n_out) out.resize(n_out);
  out.resize(n_out);
  if (n_out == 0) return;

  const auto faces = die.faces();
  if (allow_window && die.is_uniform_run()) {
    // out[j] = w * (in[j] + in[j-1] + ... + in[j-spread]), kept as a running sum.
    const std::size_t width = faces.size();
    mpz_class running = 0;
    for (std::size_t j = 0; j < n_out; ++j) {
      if (j < in.size()) running += in[j];
      if (j >= width) running -= in[j - width];
      out[j] = running;
    }
    const unsigned long weight = faces.front().weight;
    if (weight != 1) {
      for (auto& c : out) mpz_mul_ui(c.get_mpz_t(), c.get_mpz_t(), weight);
    }
    return;
  }

  for (auto& c : out) c = 0;
  for (const Face& f : faces) {
    const std::size_t offset = f.value - die.min_face();
    const unsigned long weight = f.weight;
    for (std::size_t j = 0; j < in.size(); ++j) {
      if (weight == 1) {
        mpz_add(out[j + offset].get_mpz_t(), out[j + offset].get_mpz_t(), in[j].get_mpz_t());
      } else {
        mpz_addmul_ui(out[j + offset].get_mpz_t(), in[j].get_mpz_t(), weight);
      }
    }
  }
}

}  // namespace detail

ScaledPoly multiply_by_die(const ScaledPoly& p, const DieSpec& die) {
  if (p.base() != die.total_weight()) {
    throw InvalidArgument("polynomial base " + std::to_string(p.base()) +
                          " does not match die weight " + std::to_string(die.total_weight()));
  }
  if (p.is_zero()) return ScaledPoly::zero(p.base(), p.scale() + 1);
  std::vector<mpz_class> out;
  detail::die_shift_accumulate(p.coeffs(), die, out);
  return ScaledPoly(p.base(), p.lo() + die.min_face(), std::move(out), p.scale() + 1);
}

namespace {

template <typename Member>
SplitPoly split_with(const ScaledPoly& p, Member&& member) {
  if (p.is_zero()) {
    return {ScaledPoly::zero(p.base(), p.scale()), ScaledPoly::zero(p.base(), p.scale())};
  }
  std::vector<mpz_class> hits(p.size());
  std::vector<mpz_class> rest(p.size());
  auto coeffs = p.coeffs();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (member(p.lo() + j)) {
      hits[j] = coeffs[j];
    } else {
      rest[j] = coeffs[j];
    }
  }
  return {ScaledPoly(p.base(), p.lo(), std::move(hits), p.scale()),
          ScaledPoly(p.base(), p.lo(), std::move(rest), p.scale())};
}

}  // namespace

SplitPoly split_by_predicate(const ScaledPoly& p, const PredicateSpec& pred,
                             const FactorSieve& sieve) {
  return split_with(p, [&](std::uint64_t n) { return is_hit(n, pred, sieve); });
}

SplitPoly split_by_predicate(const ScaledPoly& p, const HitTable& table) {
  return split_with(p, [&](std::uint64_t n) { return table.contains(n); });
}

mpq_class mass(const ScaledPoly& p) { return location_moment(p, 0); }

mpq_class location_moment(const ScaledPoly& p, unsigned r) {
  mpz_class total = 0;
  mpz_class weight;
  auto coeffs = p.coeffs();
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    std::uint64_t n = p.lo() + j;
    mpz_import(weight.get_mpz_t(), 1, 1, sizeof(n), 0, 0, &n);
    mpz_pow_ui(weight.get_mpz_t(), weight.get_mpz_t(), r);
    mpz_addmul(total.get_mpz_t(), weight.get_mpz_t(), coeffs[j].get_mpz_t());
  }
  mpq_class q(total, power(p.base(), p.scale()));
  q.canonicalize();
  return q;
}

}  // namespace dicehit
