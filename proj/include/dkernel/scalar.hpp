#pragma once

#include <gmpxx.h>

#include <string>

#include "error.hpp"

namespace dk {

// Exact rational scalars.  mpq_class keeps gcd(|num|, den) = 1 and den > 0 as long as
// values are canonicalized on construction; arithmetic preserves canonical form.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rat_from_decimal_string(const std::string& digits) {
    // nonnegative integer literal
    return Rational(mpz_class(digits, 10));
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational pow(const Rational& base, unsigned e) {
    Rational acc = 1;
    Rational b = base;
    unsigned n = e;
    while (n) {
        if (n & 1u) acc *= b;
        b *= b;
        n >>= 1u;
    }
    return acc;
}

} // namespace dk
