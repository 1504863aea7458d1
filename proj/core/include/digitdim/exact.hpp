#ifndef DIGITDIM_EXACT_HPP
#define DIGITDIM_EXACT_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace digitdim {

/// Exact rational numbers. Grid abscissae, thresholds, weights and user
/// inputs are all carried exactly and only converted to enclosures at the
/// point of evaluation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "n/d", or a decimal literal with optional exponent
/// ("0.25", "1e-5", "-2.5E+3") into an exact rational.
/// Throws ParameterError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// q - floor(q), the representative of q modulo 1 in [0, 1).
Rational fractional_part(const Rational& q);

/// base^exponent as an exact integer; exponent >= 0.
Integer power(long base, unsigned long exponent);

/// base^exponent as int64, throwing ParameterError on overflow.
std::int64_t checked_power(std::int64_t base, int exponent);

/// Smallest decimal n / 10^digits that is >= q.
Rational decimal_ceiling(const Rational& q, unsigned digits);

} // namespace digitdim

#endif
