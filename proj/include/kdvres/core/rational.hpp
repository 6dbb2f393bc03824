#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kdvres {

using Rational = mpq_class;
using Integer = mpz_class;

/// Always "num/den", including integers ("3/1"); the canonical wire form.
std::string to_fraction_string(const Rational& q);

/// Human form: "3", "-1/2".
std::string to_display_string(const Rational& q);

/// Accepts "n", "n/d" and a leading sign; normalizes.
Rational parse_rational(std::string_view text);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// n/d in lowest terms.
inline Rational frac(long n, long d) {
    Rational q{Integer(n), Integer(d)};
    q.canonicalize();
    return q;
}

}  // namespace kdvres
