#include "knotrep/laurent.hpp"

#include <cctype>
#include <stdexcept>

namespace knotrep {

QPoly canonical_form(const LaurentPoly& p) {
    if (p.is_zero()) return QPoly();
    const QPoly body = p.cleared();
    const auto& c = body.coeffs();
    Integer den = 1, num = 0;
    for (const auto& x : c) {
        if (is_zero(x)) continue;
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<Rational> out;
    out.reserve(c.size());
    for (const auto& x : c) {
        Rational y = x * Rational(den);
        y.canonicalize();
        out.push_back(y);
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), y.get_num_mpz_t());
    }
    Rational scale(Integer(1), num);
    if (sgn(out.back()) < 0) scale = -scale;
    for (auto& y : out) {
        y *= scale;
        y.canonicalize();
    }
    return QPoly::from_coeffs(std::move(out));
}

QPoly canonical_form(const QPoly& p) { return canonical_form(LaurentPoly(p)); }

namespace {

struct LaurentParser {
    const std::string& s;
    char var;
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("bad polynomial '" + s + "' at offset " + std::to_string(i) + ": " + what);
    }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool peek(char c) {
        skip();
        return i < s.size() && s[i] == c;
    }
    Integer integer() {
        skip();
        const std::size_t b = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (b == i) fail("expected digits");
        return Integer(s.substr(b, i - b));
    }
    long exponent() {
        skip();
        bool neg = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
        bool paren = false;
        if (peek('(')) {
            ++i;
            paren = true;
            skip();
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = (s[i++] == '-') != neg;
        }
        Integer e = integer();
        if (paren) {
            if (!peek(')')) fail("expected ')'");
            ++i;
        }
        if (!e.fits_slong_p()) fail("exponent too large");
        return neg ? -e.get_si() : e.get_si();
    }
    LaurentPoly term() {
        skip();
        Rational c(1);
        bool have_coeff = false;
        if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            Integer n = integer();
            Integer d = 1;
            if (peek('/')) {
                ++i;
                d = integer();
                if (d == 0) fail("zero denominator");
            }
            c = Rational(n, d);
            c.canonicalize();
            have_coeff = true;
            if (peek('*')) {
                ++i;
                skip();
                if (i >= s.size() || s[i] != var) fail("expected variable after '*'");
            }
        }
        skip();
        if (i < s.size() && s[i] == var) {
            ++i;
            long e = 1;
            if (peek('^')) {
                ++i;
                e = exponent();
            }
            return LaurentPoly::monomial(c, e);
        }
        if (!have_coeff) fail("expected a term");
        return LaurentPoly::monomial(c, 0);
    }
    LaurentPoly parse() {
        LaurentPoly acc;
        skip();
        bool first = true;
        while (true) {
            skip();
            if (i >= s.size()) {
                if (first) fail("empty input");
                break;
            }
            bool neg = false;
            if (s[i] == '+' || s[i] == '-') {
                neg = s[i] == '-';
                ++i;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            LaurentPoly t = term();
            acc += neg ? -t : t;
            first = false;
        }
        return acc;
    }
};

}  // namespace

LaurentPoly parse_laurent(const std::string& text, char var) {
    LaurentParser p{text, var};
    return p.parse();
}

}  // namespace knotrep
