#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dicehit/poly.hpp"

namespace dicehit {

/// One t^k slice of a truncated bivariate PGF.
struct PgfSlice {
  std::uint64_t k;
  ScaledPoly inductees;
};

/// Text form of a truncated PGF:
///
///     # W=<base>
///     # k=<round>
///     <exponent>\t<numerator>\t<scale>
///
/// Terms are nonzero and in increasing exponent order; the coefficient is
/// numerator / W^scale.
void write_pgf_text(std::ostream& out, std::uint64_t base, const std::vector<PgfSlice>& slices);

struct PgfText {
  std::uint64_t base = 1;
  std::vector<PgfSlice> slices;
};

/// Inverse of write_pgf_text. Throws InvalidArgument on malformed input.
PgfText read_pgf_text(std::istream& in);

}  // namespace dicehit
