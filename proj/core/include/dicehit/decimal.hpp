#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace dicehit {

/// Correctly rounded (half-even) decimal with `digits` significant digits.
/// Values with |x| < 1e-4 use scientific notation (`2.9020152044089e-19`),
/// everything else fixed notation. Zero renders as `0.000...`.
std::string render_decimal(const mpq_class& x, unsigned digits);

/// Renders sign * sqrt(square) with the same rules, exactly: the square
/// root is resolved by integer square roots, never floating point.
std::string render_sqrt_decimal(const mpq_class& square, int sign, unsigned digits);

/// Parses `p/q`, integers, and decimals with an optional exponent
/// (`0.5`, `1e-7`, `2.5E+3`) into an exact rational.
mpq_class parse_rational(std::string_view text);

/// Number of leading significant digits two renderings share. Scientific
/// renderings must agree on the exponent to share anything.
std::size_t common_significant_digits(std::string_view a, std::string_view b);

}  // namespace dicehit
