#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace treeapprox {

// Exact arbitrary-precision rational. All metric geometry runs on this type;
// doubles only appear in Lipschitz-extension values and convenience output.
using Rational = mpq_class;

// Accepts "p/q", integers, and finite decimals with an optional exponent
// ("-1.25", "3e-2"). Decimals are converted exactly.
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the value is an integer.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// 2^exponent, exponent may be negative.
Rational pow2(int exponent);

// Largest integer i with 2^i < value. Requires value > 0.
int floor_log2_strict(const Rational& value);

// Smallest integer i with 2^i >= value. Requires value > 0.
int ceil_log2(const Rational& value);

// value as int64 if it is an integer that fits.
bool fits_int64(const mpz_class& value);
std::int64_t to_int64(const mpz_class& value);

}  // namespace treeapprox
