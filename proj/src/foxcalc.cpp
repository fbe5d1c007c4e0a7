#include "knotrep/foxcalc.hpp"

#include <algorithm>
#include <stdexcept>

#include "knotrep/snf.hpp"

namespace knotrep {

std::vector<FoxTerm> fox_derivative(const Word& w, int j) {
    std::vector<FoxTerm> out;
    const auto& l = w.letters();
    for (std::size_t k = 0; k < l.size(); ++k) {
        if (l[k].gen != j) continue;
        if (l[k].exp > 0) out.push_back({1, w.prefix(k)});
        else out.push_back({-1, w.prefix(k + 1)});
    }
    return out;
}

Matrix<LaurentPoly> alexander_matrix(const Presentation& P) {
    const std::size_t g = P.num_generators();
    std::vector<LaurentPoly> img, inv;
    for (std::size_t i = 0; i < g; ++i) {
        img.push_back(LaurentPoly::t_power(P.h[i]));
        inv.push_back(LaurentPoly::t_power(-P.h[i]));
    }
    Matrix<LaurentPoly> A(P.relators.size(), g);
    for (std::size_t r = 0; r < P.relators.size(); ++r)
        for (std::size_t j = 0; j < g; ++j)
            A(r, j) = fox_evaluate(P.relators[r], static_cast<int>(j), img, inv, LaurentPoly(1));
    return A;
}

bool TorsionDecomposition::is_cyclic(const QPoly& q) const {
    std::size_t count = 0;
    for (const auto& d : divisors)
        if (divides(q, d)) ++count;
    return count <= 1;
}

namespace {

bool poly_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (std::size_t i = a.size(); i-- > 0;) {
        const int c = cmp(a.coeffs()[i], b.coeffs()[i]);
        if (c) return c < 0;
    }
    return false;
}

}  // namespace

std::vector<QPoly> coprime_base(std::vector<QPoly> polys) {
    std::vector<QPoly> base;
    for (auto& p : polys)
        if (p.degree() > 0) base.push_back(p.monic());
    bool changed = true;
    while (changed) {
        changed = false;
        std::sort(base.begin(), base.end(), poly_less);
        base.erase(std::unique(base.begin(), base.end()), base.end());
        for (std::size_t i = 0; i < base.size() && !changed; ++i)
            for (std::size_t k = i + 1; k < base.size() && !changed; ++k) {
                QPoly g = gcd(base[i], base[k]);
                if (g.degree() < 1) continue;
                QPoly a = base[i] / g, b = base[k] / g;
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(k));
                base.erase(base.begin() + static_cast<std::ptrdiff_t>(i));
                for (QPoly* q : {&g, &a, &b})
                    if (q->degree() > 0) base.push_back(q->monic());
                changed = true;
            }
    }
    std::sort(base.begin(), base.end(), poly_less);
    return base;
}

TorsionDecomposition torsion_decomposition(const Presentation& P) {
    TorsionDecomposition T;
    Matrix<LaurentPoly> A = alexander_matrix(P);
    const std::size_t g = P.num_generators();
    Matrix<LaurentPoly> sq(A.rows(), g - 1);
    for (std::size_t r = 0; r < A.rows(); ++r) {
        std::size_t c = 0;
        for (std::size_t j = 0; j < g; ++j) {
            if (static_cast<int>(j) == P.meridian) continue;
            sq(r, c++) = A(r, j);
        }
    }
    auto snf = smith_normal_form(sq).snf;
    T.free_rank = snf.zero_count + (sq.cols() > sq.rows() ? sq.cols() - sq.rows() : 0);
    QPoly prod(1L);
    for (const auto& d : snf.divisors) {
        // powers of t are units over Q[t, 1/t]
        const QPoly u = LaurentPoly(d).cleared().monic();
        prod *= u;
        if (u.degree() > 0) T.divisors.push_back(u);
    }
    std::vector<QPoly> parts;
    for (const auto& d : T.divisors)
        for (const auto& s : squarefree_decomposition(d)) parts.push_back(s);
    for (const auto& b : coprime_base(parts)) {
        TorsionFactor f{b, {}};
        for (const auto& d : T.divisors) {
            const unsigned v = valuation(d, b);
            if (v > 0) f.exponents.push_back(v);
        }
        std::sort(f.exponents.begin(), f.exponents.end());
        T.factors.push_back(std::move(f));
    }
    T.delta = T.free_rank ? QPoly() : canonical_form(prod);
    T.unit = T.free_rank ? Rational(0) : T.delta.lead();
    return T;
}

QPoly alexander_polynomial(const Presentation& P) {
    TorsionDecomposition T = torsion_decomposition(P);
    if (T.free_rank) throw std::domain_error("Alexander module has free part; not a knot group presentation");
    const Rational v = T.delta(Rational(1));
    if (v != 1 && v != -1) throw std::domain_error("Delta(1) = " + v.get_str() + " is not +-1; bad presentation");
    return T.delta;
}

bool check_hypothesis(const TorsionDecomposition& T, const QPoly& p, unsigned n) {
    if (n < 2) throw std::invalid_argument("hypothesis needs n >= 2");
    if (p.degree() < 1) return false;
    unsigned hits = 0, exp = 0;
    for (const auto& d : T.divisors) {
        const unsigned v = valuation(d, p);
        if (v > 0) {
            ++hits;
            exp = v;
        }
    }
    return hits == 1 && exp == n - 1;
}

bool check_hypothesis(const Presentation& P, const QPoly& p, unsigned n) {
    return check_hypothesis(torsion_decomposition(P), p, n);
}

bool blanchfield_symmetry_check(const TorsionDecomposition& T) {
    for (const auto& f : T.factors) {
        const QPoly r = f.p.reversed().monic();
        auto it = std::find_if(T.factors.begin(), T.factors.end(), [&](const TorsionFactor& g) { return g.p == r; });
        if (it == T.factors.end() || it->exponents != f.exponents) return false;
    }
    return true;
}

bool blanchfield_symmetry_check(const Presentation& P) { return blanchfield_symmetry_check(torsion_decomposition(P)); }

}  // namespace knotrep
