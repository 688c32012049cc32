#include "dicehit/decimal.hpp"

#include <cctype>

#include "dicehit/errors.hpp"

namespace dicehit {

namespace {

mpz_class pow10(long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, static_cast<unsigned long>(e));
  return r;
}

/// x * 10^shift for possibly negative shift.
mpq_class scaled(const mpq_class& x, long shift) {
  mpq_class r = x;
  if (shift >= 0) {
    r *= mpq_class(pow10(shift));
  } else {
    r /= mpq_class(pow10(-shift));
  }
  return r;
}

/// floor(log10(x)) for x > 0.
long decimal_exponent(const mpq_class& x) {
  // Estimate from bit lengths, then correct.
  long bits = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
              static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
  long e = static_cast<long>(static_cast<double>(bits) * 0.30102999566398120);
  while (scaled(x, -e) < 1) --e;
  while (scaled(x, -(e + 1)) >= 1) ++e;
  return e;
}

/// Places `mantissa` (exactly `digits` digits) with decimal exponent `e`.
std::string format(bool negative, const std::string& mantissa, long e) {
  std::string out = negative ? "-" : "";
  const long digits = static_cast<long>(mantissa.size());
  if (e < -4) {
    out += mantissa[0];
    if (digits > 1) out += "." + mantissa.substr(1);
    out += "e" + std::to_string(e);
    return out;
  }
  if (e < 0) {
    out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + mantissa;
    return out;
  }
  if (e + 1 >= digits) {
    out += mantissa + std::string(static_cast<std::size_t>(e + 1 - digits), '0');
    return out;
  }
  out += mantissa.substr(0, static_cast<std::size_t>(e + 1)) + "." +
         mantissa.substr(static_cast<std::size_t>(e + 1));
  return out;
}

std::string zero(unsigned digits) {
  return digits > 1 ? "0." + std::string(digits - 1, '0') : "0";
}

/// Carries a rounded-up mantissa that spilled to digits + 1 places.
void settle(mpz_class& n, long& e, unsigned digits) {
  if (n == pow10(digits)) {
    n = pow10(digits - 1);
    ++e;
  }
}

}  // namespace

std::string render_decimal(const mpq_class& x, unsigned digits) {
  if (digits < 1) throw InvalidArgument("digits must be >= 1");
  if (sgn(x) == 0) return zero(digits);
  const bool negative = sgn(x) < 0;
  const mpq_class mag = abs(x);
  long e = decimal_exponent(mag);

  // mag * 10^(digits-1-e) lies in [10^(digits-1), 10^digits).
  const mpq_class s = scaled(mag, static_cast<long>(digits) - 1 - e);
  mpz_class n;
  mpz_class rem;
  mpz_fdiv_qr(n.get_mpz_t(), rem.get_mpz_t(), s.get_num_mpz_t(), s.get_den_mpz_t());
  // Compare the fractional part rem/den with 1/2.
  const int half = cmp(2 * rem, s.get_den());
  if (half > 0 || (half == 0 && mpz_odd_p(n.get_mpz_t()))) ++n;
  settle(n, e, digits);
  return format(negative, n.get_str(), e);
}

std::string render_sqrt_decimal(const mpq_class& square, int sign, unsigned digits) {
  if (digits < 1) throw InvalidArgument("digits must be >= 1");
  if (sgn(square) < 0) throw InvalidArgument("cannot take the square root of a negative value");
  if (sgn(square) == 0 || sign == 0) return zero(digits);

  // floor(log10 sqrt(q)) = floor(floor(log10 q) / 2).
  const long eq = decimal_exponent(square);
  long e = eq >= 0 ? eq / 2 : -((-eq + 1) / 2);

  // y = q * 10^(2(digits-1-e)); sqrt(y) lies in [10^(digits-1), 10^digits).
  const mpq_class y = scaled(square, 2 * (static_cast<long>(digits) - 1 - e));
  mpz_class floor_y;
  mpz_fdiv_q(floor_y.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
  mpz_class n;
  mpz_sqrt(n.get_mpz_t(), floor_y.get_mpz_t());  // floor(sqrt(y)) == floor(sqrt(floor(y)))

  // Round: sqrt(y) vs n + 1/2  <=>  4y vs (2n + 1)^2.
  const mpz_class odd = 2 * n + 1;
  const mpq_class threshold(mpz_class(odd * odd), 4);
  const int half = cmp(y, threshold);
  if (half > 0 || (half == 0 && mpz_odd_p(n.get_mpz_t()))) ++n;
  settle(n, e, digits);
  return format(sign < 0, n.get_str(), e);
}

mpq_class parse_rational(std::string_view text) {
  auto bad = [&] { return InvalidArgument("cannot parse '" + std::string(text) + "' as a number"); };
  if (text.empty()) throw bad();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num;
    mpz_class den;
    if (num.set_str(std::string(text.substr(0, slash)), 10) != 0 ||
        den.set_str(std::string(text.substr(slash + 1)), 10) != 0 || sgn(den) == 0) {
      throw bad();
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') negative = text[i++] == '-';
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw bad();
  long exponent = 0;
  if (i < text.size()) {
    if (text[i] != 'e' && text[i] != 'E') throw bad();
    std::string exp_text(text.substr(i + 1));
    std::size_t used = 0;
    try {
      exponent = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != exp_text.size()) throw bad();
  }
  mpq_class q{mpz_class(digits, 10)};
  q = scaled(q, exponent - frac_digits);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

std::size_t common_significant_digits(std::string_view a, std::string_view b) {
  auto exponent_part = [](std::string_view s) {
    auto pos = s.find('e');
    return pos == std::string_view::npos ? std::string_view{} : s.substr(pos);
  };
  if (exponent_part(a) != exponent_part(b)) return 0;

  std::size_t count = 0;
  bool significant = false;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i] != b[i] || a[i] == 'e') break;
    if (!std::isdigit(static_cast<unsigned char>(a[i]))) continue;
    if (a[i] != '0') significant = true;
    if (significant) ++count;
  }
  return count;
}

}  // namespace dicehit
