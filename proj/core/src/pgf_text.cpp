#include "dicehit/pgf_text.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "dicehit/errors.hpp"

namespace dicehit {

void write_pgf_text(std::ostream& out, std::uint64_t base, const std::vector<PgfSlice>& slices) {
  out << "# W=" << base << '\n';
  for (const auto& slice : slices) {
    out << "# k=" << slice.k << '\n';
    const auto& p = slice.inductees;
    auto coeffs = p.coeffs();
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      if (sgn(coeffs[j]) == 0) continue;
      out << (p.lo() + j) << '\t' << coeffs[j].get_str() << '\t' << p.scale() << '\n';
    }
  }
}

namespace {

struct PendingSlice {
  std::uint64_t k = 0;
  std::uint64_t lo = 0;
  std::uint64_t last = 0;
  unsigned scale = 0;
  bool has_scale = false;
  std::vector<mpz_class> coeffs;
};

[[noreturn]] void fail(std::size_t line_no, const std::string& why) {
  throw InvalidArgument("pgf text line " + std::to_string(line_no) + ": " + why);
}

}  // namespace

PgfText read_pgf_text(std::istream& in) {
  PgfText result;
  bool have_base = false;
  std::optional<PendingSlice> pending;

  auto flush = [&] {
    if (!pending) return;
    result.slices.push_back({pending->k, ScaledPoly(result.base, pending->lo,
                                                     std::move(pending->coeffs),
                                                     pending->has_scale ? pending->scale : 0)});
    pending.reset();
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.starts_with("# W=")) {
      if (have_base) fail(line_no, "duplicate W header");
      result.base = std::stoull(line.substr(4));
      have_base = true;
      continue;
    }
    if (line.starts_with("# k=")) {
      if (!have_base) fail(line_no, "slice before W header");
      flush();
      pending.emplace();
      pending->k = std::stoull(line.substr(4));
      continue;
    }
    if (line.starts_with('#')) continue;
    if (!pending) fail(line_no, "term outside a slice");

    std::istringstream fields(line);
    std::uint64_t exponent = 0;
    std::string numerator;
    unsigned scale = 0;
    if (!(fields >> exponent >> numerator >> scale)) fail(line_no, "expected exponent, numerator, scale");
    mpz_class value;
    if (value.set_str(numerator, 10) != 0 || sgn(value) <= 0) fail(line_no, "bad numerator");
    if (pending->has_scale && scale != pending->scale) fail(line_no, "mixed scales in one slice");
    if (!pending->coeffs.empty() && exponent <= pending->last) fail(line_no, "exponents not increasing");
    if (pending->coeffs.empty()) {
      pending->lo = exponent;
    } else {
      pending->coeffs.resize(exponent - pending->lo);
    }
    pending->coeffs.push_back(value);
    pending->last = exponent;
    pending->scale = scale;
    pending->has_scale = true;
  }
  flush();
  if (!have_base) throw InvalidArgument("pgf text has no W header");
  return result;
}

}  // namespace dicehit
