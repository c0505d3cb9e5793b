#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dasep {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: a value that violates a documented precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Parses "a/b" or "a" (optionally signed). Decimal points and exponents are
/// rejected so that every value entering the library is exact.
Rational parse_rational(std::string_view text);

/// Always "numerator/denominator", including integers ("3/1") and zero ("0/1").
std::string format_rational(const Rational& value);

/// Smallest integer >= value.
Integer ceil(const Rational& value);

/// value^exponent for exponent >= 0.
Rational power(const Rational& value, unsigned exponent);

}  // namespace dasep
