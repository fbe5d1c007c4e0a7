#pragma once

// Reducible metabelian representations into GL(n) and SL(n) built from the
// (t - alpha)-torsion of the Alexander module.

#include <optional>
#include <stdexcept>
#include <vector>

#include "knotrep/matrix.hpp"
#include "knotrep/presentation.hpp"
#include "knotrep/tower.hpp"

namespace knotrep {

using AlgMatrix = Matrix<AlgNum>;
using AlgRow = std::vector<AlgNum>;

struct HypothesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

// J_n^m = (I + N)^m, entries C(m, j - i); any integer m.
AlgMatrix jordan_power(std::size_t n, long m);
// p_ij = (-1)^j C(j, i), 1-based. P^2 = I and P J P^-1 = J^-1.
Matrix<Rational> conjugator_P(std::size_t n);
AlgMatrix to_alg(const Matrix<Rational>& m);

AlgRow row_times(const AlgRow& x, const AlgMatrix& m);
Matrix<cplx> to_complex(const AlgMatrix& m, const EmbeddingPoint& point);

// Values ztilde(S_j), one row of length n - 1 per generator. The cocycle
// rule is ztilde(uv) = ztilde(u) + alpha^h(u) ztilde(v) J^h(u).
struct CocycleData {
    Presentation presentation;
    AlgNum alpha;
    std::size_t n = 2;
    std::vector<AlgRow> ztilde;
};

enum class RepForm { tilde, upper, sl };

struct Representation {
    Presentation presentation;
    std::size_t n = 2;
    RepForm form = RepForm::tilde;
    AlgNum alpha;
    std::optional<AlgNum> lambda;
    std::vector<AlgMatrix> gens, gens_inv;

    AlgMatrix image(const Word& w) const;
    // first relator whose image is not I, if any
    std::optional<std::size_t> failing_relator() const;
    // z-values on generator j read off the matrices: ztilde for the tilde
    // form, z for the upper and sl forms (undoing the lambda scaling).
    AlgRow z_values(std::size_t j) const;
    // ztilde or z on an arbitrary word, read off its image
    AlgRow z_on(const Word& w) const;
};

// Solves for ztilde with ztilde(meridian) = 0 and ztilde_1 non-principal.
// alpha is rational or the generator of a first-level tower over Q. A zero
// divisor in that tower surfaces as SplitEvent; drive with on_branches.
CocycleData solve_cocycle_tower(const Presentation& P, const AlgNum& alpha, std::size_t n);

// Is ztilde_1 a coboundary in C_alpha? Decided by an exact linear solve.
bool is_principal(const CocycleData& d);

Representation build_tilde_rho(const CocycleData& d);
Representation to_upper_form(const Representation& tilde);
Representation normalize_sl(const Representation& upper, const AlgNum& lambda);

struct UpgradeResult {
    bool obstructed = true;
    std::vector<AlgNum> witness;  // z_n(S_j) when upgradable
};
// Searches for z_n making [[alpha^h, z, z_n], [0, J_n^h]] a representation.
UpgradeResult upgrade_obstruction(const Representation& upper);

// Conjugates by [[1, c], [0, I]] so that the first row of rho(S_gen) is
// (a, 0, ..., 0).
Representation normalize_cocycle_at(const Representation& rho, std::size_t gen);
CocycleData normalize_cocycle_at(const CocycleData& d, std::size_t gen);

// The coboundary of the constant (c, 0, ..., 0); ztilde_1 is principal.
CocycleData principal_cocycle(const Presentation& P, const AlgNum& alpha, std::size_t n, const AlgNum& c);

}  // namespace knotrep
