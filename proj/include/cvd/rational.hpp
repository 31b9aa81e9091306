#ifndef CVD_RATIONAL_HPP
#define CVD_RATIONAL_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace cvd {

// Exact rational scalar. All geometric computation in this project is done
// on these; no floating point enters any predicate.
using Rational = mpq_class;
using Integer = mpz_class;

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parses "p/q", plain integers, and decimal strings ("-2.75") exactly.
Rational parse_rational(const std::string& text);

// Canonical "p/q" or "p" form, matching what parse_rational accepts.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

// Smallest integer r >= 0 with r*r >= value (value >= 0 required).
Integer ceil_sqrt(const Rational& value);

}  // namespace cvd

#endif
