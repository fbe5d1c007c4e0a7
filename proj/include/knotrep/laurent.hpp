#pragma once

// Laurent polynomials t^shift * body(t) over an exact field.

#include <string>
#include <utility>

#include "knotrep/poly.hpp"

namespace knotrep {

template <class F>
class Laurent {
public:
    Laurent() = default;
    Laurent(long c) : body_(c) {}
    explicit Laurent(Poly<F> p, long shift = 0) : body_(std::move(p)), shift_(shift) { normalize(); }

    static Laurent monomial(F c, long exponent) { return Laurent(Poly<F>(std::move(c)), exponent); }
    static Laurent t_power(long k) { return monomial(F(1), k); }

    bool is_zero() const { return body_.is_zero(); }
    // Lowest and highest exponent in the support.
    long low() const { return shift_; }
    long high() const { return shift_ + body_.degree(); }
    long span() const { return body_.degree(); }

    F coeff(long e) const { return e < shift_ ? F(0) : body_.coeff(static_cast<std::size_t>(e - shift_)); }
    const Poly<F>& body() const { return body_; }

    // t^-low * this, an ordinary polynomial with nonzero constant term.
    Poly<F> cleared() const { return body_; }

    Laurent operator-() const { return Laurent(-body_, shift_); }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        const long lo = std::min(a.shift_, b.shift_);
        return Laurent(a.body_.shifted(a.shift_ - lo) + b.body_.shifted(b.shift_ - lo), lo);
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        if (a.is_zero() || b.is_zero()) return Laurent();
        return Laurent(a.body_ * b.body_, a.shift_ + b.shift_);
    }
    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    friend bool operator==(const Laurent& a, const Laurent& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    bool is_unit() const { return body_.degree() == 0; }

    // t -> t^-1
    Laurent reciprocal() const {
        if (is_zero()) return *this;
        return Laurent(body_.reversed(), -high());
    }

    F eval(const F& x) const {
        F v = body_(x);
        if (shift_ >= 0) {
            for (long i = 0; i < shift_; ++i) v = v * x;
        } else {
            const F xi = inverse(x);
            for (long i = 0; i < -shift_; ++i) v = v * xi;
        }
        return v;
    }

    std::string str(const std::string& var = "t") const;

private:
    void normalize() {
        if (body_.is_zero()) {
            shift_ = 0;
            return;
        }
        std::size_t k = 0;
        while (detail::coeff_zero(body_.coeffs()[k])) ++k;
        if (k > 0) {
            std::vector<F> c(body_.coeffs().begin() + static_cast<std::ptrdiff_t>(k), body_.coeffs().end());
            body_ = Poly<F>::from_coeffs(std::move(c));
            shift_ += static_cast<long>(k);
        }
    }

    Poly<F> body_;
    long shift_ = 0;
};

template <class F>
bool is_zero(const Laurent<F>& p) {
    return p.is_zero();
}

template <class F>
std::string Laurent<F>::str(const std::string& var) const {
    if (shift_ == 0) return body_.str(var);
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (long e = high(); e >= low(); --e) {
        F c = coeff(e);
        if (detail::coeff_zero(c)) continue;
        const bool neg = poly_coeff_is_negative(c);
        std::string mag = to_string(neg ? F(-c) : c);
        if (!poly_coeff_is_simple(F(neg ? F(-c) : c))) mag = "(" + mag + ")";
        s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        first = false;
        if (e == 0) {
            s += mag;
            continue;
        }
        if (mag != "1") s += mag + "*";
        s += var;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

using LaurentPoly = Laurent<Rational>;
using QPoly = Poly<Rational>;

// Canonical representative of an element up to units c*t^k: negative powers
// cleared, primitive integer coefficients, positive leading coefficient.
QPoly canonical_form(const LaurentPoly& p);
QPoly canonical_form(const QPoly& p);

// Parses strings like "2*t^2 - 3*t + 2" or "t^-1 + 1".
LaurentPoly parse_laurent(const std::string& text, char var = 't');

}  // namespace knotrep
