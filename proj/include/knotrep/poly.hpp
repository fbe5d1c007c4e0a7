#pragma once

// Dense univariate polynomials over an exact field F.
//
// F must provide: construction from long, + - * and unary -, and the free
// functions is_zero(F), inverse(F) and to_string(F). Rational and AlgNum
// both qualify; so does Poly<F> itself as a ring for the matrix code.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "knotrep/rational.hpp"

namespace knotrep {

namespace detail {
// Unqualified so overloads declared with later coefficient types are found.
template <class F>
bool coeff_zero(const F& c) {
    return is_zero(c);
}
}  // namespace detail

template <class F>
class Poly {
public:
    Poly() = default;
    Poly(long c) : Poly(F(c)) {}
    explicit Poly(F c) {
        if (!detail::coeff_zero(c)) c_.push_back(std::move(c));
    }

    static Poly from_coeffs(std::vector<F> coeffs) {
        Poly p;
        p.c_ = std::move(coeffs);
        p.trim();
        return p;
    }

    static Poly monomial(F c, std::size_t deg) {
        Poly p;
        if (detail::coeff_zero(c)) return p;
        p.c_.assign(deg + 1, F(0));
        p.c_[deg] = std::move(c);
        return p;
    }

    static Poly x() { return monomial(F(1), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }

    F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
    const F& lead() const {
        if (c_.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c_.back();
    }
    const std::vector<F>& coeffs() const { return c_; }

    Poly operator-() const {
        Poly r = *this;
        for (auto& v : r.c_) v = -v;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) {
        *this = *this * o;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::coeff_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return from_coeffs(std::move(r));
    }

    Poly scaled(const F& s) const {
        Poly r = *this;
        for (auto& v : r.c_) v = v * s;
        r.trim();
        return r;
    }

    Poly shifted(std::size_t k) const {
        if (is_zero()) return *this;
        Poly r;
        r.c_.assign(k, F(0));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    template <class X>
    X eval(const X& x) const {
        X acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }
    F operator()(const F& x) const { return eval<F>(x); }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<F> r(c_.size() - 1, F(0));
        for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * F(static_cast<long>(i));
        return from_coeffs(std::move(r));
    }

    // Leading coefficient set to exactly F(1).
    Poly monic() const {
        if (is_zero()) return *this;
        F inv = inverse(lead());
        Poly r = scaled(inv);
        r.c_.back() = F(1);
        return r;
    }

    // x^deg * p(1/x)
    Poly reversed() const {
        Poly r = *this;
        std::reverse(r.c_.begin(), r.c_.end());
        r.trim();
        return r;
    }

    std::string str(const std::string& var = "t") const;

private:
    void trim() {
        while (!c_.empty() && detail::coeff_zero(c_.back())) c_.pop_back();
    }

    std::vector<F> c_;
};

template <class F>
bool is_zero(const Poly<F>& p) {
    return p.is_zero();
}

template <class F>
std::string to_string(const Poly<F>& p, const std::string& var = "t") {
    return p.str(var);
}

// Printing hooks; other coefficient types overload these next to their
// definition so argument-dependent lookup finds them.
inline bool poly_coeff_is_simple(const Rational&) { return true; }
template <class F>
bool poly_coeff_is_simple(const F& c) {
    const std::string s = to_string(c);
    return s.find_first_of("+- ", 1) == std::string::npos;
}

inline bool poly_coeff_is_negative(const Rational& c) { return sgn(c) < 0; }
template <class F>
bool poly_coeff_is_negative(const F&) {
    return false;
}

template <class F>
std::string Poly<F>::str(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const F& c = c_[k];
        if (detail::coeff_zero(c)) continue;
        const bool neg = poly_coeff_is_negative(c);
        const F mag = neg ? F(-c) : c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        const std::string ms = to_string(mag);
        const bool unit = (ms == "1");
        if (k == 0) {
            os << (poly_coeff_is_simple(mag) ? ms : "(" + ms + ")");
            continue;
        }
        if (!unit) os << (poly_coeff_is_simple(mag) ? ms : "(" + ms + ")") << "*";
        os << var;
        if (k > 1) os << "^" << k;
    }
    return os.str();
}

// Quotient and remainder; b must be nonzero with an invertible leading coefficient.
template <class F>
std::pair<Poly<F>, Poly<F>> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly<F>(), a};
    const F inv_lead = inverse(b.lead());
    std::vector<F> r = a.coeffs();
    const std::vector<F>& bc = b.coeffs();
    const std::size_t db = bc.size() - 1;
    std::vector<F> q(r.size() - db, F(0));
    for (std::size_t k = r.size(); k-- > db;) {
        if (is_zero(r[k])) continue;
        const F f = r[k] * inv_lead;
        q[k - db] = f;
        for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = r[k - db + i] - f * bc[i];
    }
    r.resize(db);
    return {Poly<F>::from_coeffs(std::move(q)), Poly<F>::from_coeffs(std::move(r))};
}

template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).second;
}

template <class F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).first;
}

template <class F>
bool divides(const Poly<F>& d, const Poly<F>& a) {
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).second.is_zero();
}

// Monic gcd; gcd(a, 0) = monic(a), gcd(0, 0) = 0.
template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    while (!b.is_zero()) {
        Poly<F> r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

template <class F>
struct Xgcd {
    Poly<F> g;  // monic
    Poly<F> s;  // s*a + t*b = g
    Poly<F> t;
};

template <class F>
Xgcd<F> xgcd(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0(1L), s1, t0, t1(1L);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly<F> s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<F> t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const F inv = inverse(r0.lead());
    return {r0.monic(), s0.scaled(inv), t0.scaled(inv)};
}

template <class F>
Poly<F> pow(const Poly<F>& base, unsigned e) {
    Poly<F> r(1L), b = base;
    while (e) {
        if (e & 1u) r = r * b;
        e >>= 1u;
        if (e) b = b * b;
    }
    return r;
}

// Yun's algorithm (characteristic zero): returns s_1, s_2, ... with
// monic(f) = prod s_i^i, each s_i squarefree and pairwise coprime.
template <class F>
std::vector<Poly<F>> squarefree_decomposition(const Poly<F>& f) {
    std::vector<Poly<F>> out;
    if (f.degree() < 1) return out;
    Poly<F> a = f.monic();
    Poly<F> b = gcd(a, a.derivative());
    Poly<F> c = divmod(a, b).first;
    Poly<F> d = divmod(a.derivative(), b).first - c.derivative();
    while (c.degree() > 0) {
        Poly<F> g = gcd(c, d);
        out.push_back(g);
        c = divmod(c, g).first;
        d = divmod(d, g).first - c.derivative();
    }
    while (!out.empty() && out.back().degree() == 0) out.pop_back();
    return out;
}

template <class F>
bool is_squarefree(const Poly<F>& f) {
    if (f.degree() < 1) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

// Largest e with d^e | a (d nonconstant, a nonzero).
template <class F>
unsigned valuation(const Poly<F>& a, const Poly<F>& d) {
    if (d.degree() < 1 || a.is_zero()) throw std::invalid_argument("valuation needs nonzero a and nonconstant d");
    unsigned e = 0;
    Poly<F> cur = a;
    for (;;) {
        auto [q, r] = divmod(cur, d);
        if (!r.is_zero()) return e;
        cur = std::move(q);
        ++e;
    }
}

}  // namespace knotrep
