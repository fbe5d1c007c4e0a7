#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace knotrep {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
// exact zero test; lets Matrix<std::complex<double>> skip zero entries
inline bool is_zero(const std::complex<double>& z) { return z == 0.0; }

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational inverse(const Rational& q) {
    if (is_zero(q)) throw std::domain_error("rational division by zero");
    return Rational(1) / q;
}

inline Rational pow(const Rational& a, long e) {
    Rational b = e < 0 ? inverse(a) : a, r = 1;
    for (unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e); n; n >>= 1, b *= b)
        if (n & 1) r *= b;
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Generalized binomial coefficient C(m, k) for any integer m and k >= 0.
inline Rational binomial(long m, long k) {
    if (k < 0) return Rational(0);
    Rational r(1);
    for (long i = 0; i < k; ++i) {
        r *= Rational(m - i);
        r /= Rational(i + 1);
    }
    return r;
}

}  // namespace knotrep
