#pragma once

// Twisted cohomology H^0, H^1, H^2 of the presentation 2-complex with
// coefficients in a finite-dimensional module.

#include <exception>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "knotrep/foxcalc.hpp"
#include "knotrep/repbuilder.hpp"

namespace knotrep {

// Generators act on column vectors from the left.
template <class T>
struct CoeffModule {
    std::size_t dim = 0;
    std::vector<Matrix<T>> gens, gens_inv;
    // Columns give the module basis in gl(n) coordinates (E_i^j row-major)
    // when the module sits inside an adjoint module.
    std::optional<Matrix<T>> ambient;
    std::string label;
};

enum class AdKind { gl, sl };

struct CohomologyReport {
    std::size_t h0 = 0, h1 = 0, h2 = 0, z1 = 0, b1 = 0;
    bool euler_ok = false;  // h0 - h1 + h2 = (1 - g + r) m, which is 0 for deficiency one
    bool exact = true;
};

struct CocycleBasis {
    std::vector<std::vector<AlgNum>> z1;       // generator-major: z(S_j) occupies [j m, (j+1) m)
    std::vector<std::vector<AlgNum>> h1_reps;  // subset of z1 complementary to B^1
};

template <class T>
struct QuotientModule {
    CoeffModule<T> module;
    Matrix<T> projection;  // (m - k) x m, old coordinates to quotient coordinates
};

std::size_t matrix_rank(const Matrix<AlgNum>& M);
// SVD rank; singular values below rel_tol * largest count as zero.
std::size_t matrix_rank(const Matrix<cplx>& M, double rel_tol = 1e-8);
// Smallest relative singular-value gap to the threshold: sigma / (rel_tol * sigma_max),
// for the singular value closest to it. Values near 1 are borderline.
double rank_margin(const Matrix<cplx>& M, double rel_tol);

CoeffModule<AlgNum> module_trivial(const Presentation& P, std::size_t m = 1);
// C[t^{+-1}]/(t - alpha)^k: each generator acts by (alpha J_k)^h.
CoeffModule<AlgNum> module_cyclic(const Presentation& P, const AlgNum& alpha, std::size_t k);

CoeffModule<AlgNum> module_ad(const Representation& rho, AdKind kind);
CoeffModule<cplx> module_ad(const std::vector<Matrix<cplx>>& gens, AdKind kind);

// Restriction to an invariant subspace (columns of basis); a non-invariant
// span raises ConsistencyError.
CoeffModule<AlgNum> submodule(const CoeffModule<AlgNum>& M, const Matrix<AlgNum>& basis);
QuotientModule<AlgNum> quotient(const CoeffModule<AlgNum>& M, const Matrix<AlgNum>& basis);

// C(i): the last i + 1 columns of gl(n), as a submodule of Ad(rho).
CoeffModule<AlgNum> filtration_C(const Representation& rho, std::size_t i);
// (gl / C(n - 2)) modulo the image of the trivial line E_1^1.
CoeffModule<AlgNum> quotient_M(const Representation& rho);

bool action_is_valid(const Presentation& P, const CoeffModule<AlgNum>& M);

// Fox Jacobian: block (r, j) is dW_r/dS_j evaluated in the module.
template <class T>
Matrix<T> fox_jacobian_serial(const Presentation& P, const CoeffModule<T>& M) {
    const std::size_t m = M.dim, g = P.num_generators(), r = P.relators.size();
    Matrix<T> J(r * m, g * m);
    const Matrix<T> I = Matrix<T>::identity(m);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t j = 0; j < g; ++j)
            J.set_block(k * m, j * m, fox_evaluate(P.relators[k], static_cast<int>(j), M.gens, M.gens_inv, I));
    return J;
}

template <class T>
Matrix<T> fox_jacobian_parallel(const Presentation& P, const CoeffModule<T>& M) {
    const std::size_t m = M.dim, g = P.num_generators(), r = P.relators.size();
    Matrix<T> J(r * m, g * m);
    const Matrix<T> I = Matrix<T>::identity(m);
    const long blocks = static_cast<long>(r * g);
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long b = 0; b < blocks; ++b) {
        const std::size_t k = static_cast<std::size_t>(b) / g, j = static_cast<std::size_t>(b) % g;
        try {
            auto D = fox_evaluate(P.relators[k], static_cast<int>(j), M.gens, M.gens_inv, I);
            J.set_block(k * m, j * m, D);
        } catch (...) {
#pragma omp critical(knotrep_jacobian_err)
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return J;
}

template <class T>
Matrix<T> fox_jacobian(const Presentation& P, const CoeffModule<T>& M) {
    return P.relators.size() * P.num_generators() * M.dim * M.dim >= 4096 ? fox_jacobian_parallel(P, M)
                                                                           : fox_jacobian_serial(P, M);
}

template <class T>
Matrix<T> fixed_space_matrix(const CoeffModule<T>& M) {
    Matrix<T> F(M.gens.size() * M.dim, M.dim);
    for (std::size_t j = 0; j < M.gens.size(); ++j) F.set_block(j * M.dim, 0, M.gens[j] - Matrix<T>::identity(M.dim));
    return F;
}

template <class T>
CohomologyReport cohomology_dims(const Presentation& P, const CoeffModule<T>& M) {
    const std::size_t m = M.dim, g = P.num_generators(), r = P.relators.size();
    CohomologyReport rep;
    rep.exact = !std::is_same_v<T, cplx>;
    const std::size_t R = r ? matrix_rank(fox_jacobian(P, M)) : 0;
    rep.h0 = m - (m ? matrix_rank(fixed_space_matrix(M)) : 0);
    rep.z1 = g * m - R;
    rep.b1 = m - rep.h0;
    rep.h1 = rep.z1 - rep.b1;
    rep.h2 = r * m - R;
    const long chi = (1 - static_cast<long>(g) + static_cast<long>(r)) * static_cast<long>(m);
    rep.euler_ok = static_cast<long>(rep.h0) - static_cast<long>(rep.h1) + static_cast<long>(rep.h2) == chi;
    return rep;
}

CocycleBasis cocycle_basis(const Presentation& P, const CoeffModule<AlgNum>& M);

// For an adjoint module of rho in the upper or SL form: a cocycle whose
// (n, 1) entries form a non-principal C_{alpha^-1} cocycle, gauged so that
// the (n, 1) entry vanishes on the meridian. Nullopt if none exists.
std::optional<std::vector<AlgNum>> distinguished_cocycle(const Representation& rho, const CoeffModule<AlgNum>& ad);

CoeffModule<cplx> to_complex(const CoeffModule<AlgNum>& M, const EmbeddingPoint& point);

}  // namespace knotrep
