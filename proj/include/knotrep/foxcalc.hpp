#pragma once

// Fox free differential calculus, the Alexander matrix and the torsion
// decomposition of the Alexander module.

#include <vector>

#include "knotrep/laurent.hpp"
#include "knotrep/matrix.hpp"
#include "knotrep/presentation.hpp"

namespace knotrep {

// d w / d x_j = sum sign * prefix.
struct FoxTerm {
    int sign;
    Word prefix;
};
std::vector<FoxTerm> fox_derivative(const Word& w, int j);

// Image of d w / d x_j in a ring, given the images of the generators and
// their inverses. Walks the word once keeping the running prefix product.
template <class R>
R fox_evaluate(const Word& w, int j, const std::vector<R>& img, const std::vector<R>& img_inv, const R& one) {
    R acc = one - one;
    R prefix = one;
    for (const auto& x : w.letters()) {
        const auto g = static_cast<std::size_t>(x.gen);
        if (x.exp > 0) {
            if (x.gen == j) acc = acc + prefix;
            prefix = prefix * img[g];
        } else {
            prefix = prefix * img_inv[g];
            if (x.gen == j) acc = acc - prefix;
        }
    }
    return acc;
}

// Image of a whole word.
template <class R>
R word_image(const Word& w, const std::vector<R>& img, const std::vector<R>& img_inv, const R& one) {
    R p = one;
    for (const auto& x : w.letters()) p = p * (x.exp > 0 ? img[static_cast<std::size_t>(x.gen)] : img_inv[static_cast<std::size_t>(x.gen)]);
    return p;
}

// (#relators) x (#generators), entry (r, j) = abelianized d W_r / d S_j.
Matrix<LaurentPoly> alexander_matrix(const Presentation& P);

struct TorsionFactor {
    QPoly p;                          // monic, squarefree; split further on demand
    std::vector<unsigned> exponents;  // one per invariant factor divisible by p, ascending
};

struct TorsionDecomposition {
    std::vector<QPoly> divisors;       // nonconstant monic invariant factors, d_i | d_{i+1}
    std::vector<TorsionFactor> factors;
    std::size_t free_rank = 0;         // zero invariant factors (nonzero for links or bad input)
    QPoly delta;                       // canonical form of prod(divisors)
    Rational unit;                     // delta = unit * prod(divisors)
    bool is_cyclic(const QPoly& p) const;
};

TorsionDecomposition torsion_decomposition(const Presentation& P);
QPoly alexander_polynomial(const Presentation& P);  // canonical; throws if Delta(1) != +-1

// Exactly one invariant factor is divisible by p, with p-valuation n - 1.
bool check_hypothesis(const TorsionDecomposition& T, const QPoly& p, unsigned n);
bool check_hypothesis(const Presentation& P, const QPoly& p, unsigned n);

// Factors pair with their reciprocals with equal exponent multisets.
bool blanchfield_symmetry_check(const TorsionDecomposition& T);
bool blanchfield_symmetry_check(const Presentation& P);

// Pairwise coprime squarefree base of the given polynomials.
std::vector<QPoly> coprime_base(std::vector<QPoly> polys);

}  // namespace knotrep
