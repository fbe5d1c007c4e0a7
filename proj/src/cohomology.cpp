#include "knotrep/cohomology.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include "knotrep/cochain.hpp"

namespace knotrep {

namespace {

Eigen::MatrixXcd to_eigen(const Matrix<cplx>& M) {
    Eigen::MatrixXcd E(static_cast<Eigen::Index>(M.rows()), static_cast<Eigen::Index>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) E(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = M(i, j);
    return E;
}

Eigen::VectorXd singular_values(const Matrix<cplx>& M) {
    if (M.rows() == 0 || M.cols() == 0) return Eigen::VectorXd();
    return Eigen::BDCSVD<Eigen::MatrixXcd>(to_eigen(M)).singularValues();
}

// sl(n) inside gl(n): basis E_i^j (i != j) and E_i^i - E_n^n, in the row-major
// order of gl with the last index dropped. Coordinates of a trace-zero X are
// its entries except X_nn.
template <class T>
std::pair<Matrix<T>, Matrix<T>> sl_basis(std::size_t n) {
    const std::size_t N = n * n;
    Matrix<T> B(N, N - 1), S(N - 1, N);
    for (std::size_t k = 0; k + 1 < N; ++k) {
        B(k, k) = T(1);
        if (k / n == k % n) B(N - 1, k) = T(-1);
        S(k, k) = T(1);
    }
    return {B, S};
}

template <class T>
CoeffModule<T> adjoint(const std::vector<Matrix<T>>& g, const std::vector<Matrix<T>>& gi, AdKind kind) {
    const std::size_t n = g.at(0).rows();
    CoeffModule<T> M;
    M.dim = n * n;
    M.label = "gl(" + std::to_string(n) + ")";
    for (std::size_t j = 0; j < g.size(); ++j) {
        M.gens.push_back(kron(g[j], gi[j].transpose()));
        M.gens_inv.push_back(kron(gi[j], g[j].transpose()));
    }
    M.ambient = Matrix<T>::identity(M.dim);
    if (kind == AdKind::gl) return M;
    auto [B, S] = sl_basis<T>(n);
    CoeffModule<T> L;
    L.dim = M.dim - 1;
    L.label = "sl(" + std::to_string(n) + ")";
    for (std::size_t j = 0; j < g.size(); ++j) {
        L.gens.push_back(S * M.gens[j] * B);
        L.gens_inv.push_back(S * M.gens_inv[j] * B);
    }
    L.ambient = B;
    return L;
}

struct Adapted {
    Matrix<AlgNum> Q, Qi;
    std::size_t k;
};

Adapted adapted_basis(const CoeffModule<AlgNum>& M, const Matrix<AlgNum>& basis) {
    if (basis.rows() != M.dim) throw std::invalid_argument("subspace basis has the wrong ambient dimension");
    Adapted a{complete_basis(basis), {}, basis.cols()};
    a.Qi = inverse(a.Q);
    for (const auto& A : M.gens) {
        const auto T = a.Qi * A * a.Q;
        if (!T.block(a.k, 0, M.dim - a.k, a.k).is_zero()) throw ConsistencyError("subspace is not invariant");
    }
    return a;
}

Matrix<AlgNum> gl_columns(std::size_t n, std::size_t first_col) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = first_col; l < n; ++l) idx.push_back(k * n + l);
    Matrix<AlgNum> B(n * n, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c) B(idx[c], c) = AlgNum(1);
    return B;
}

std::vector<AlgNum> coboundary_of(const CoeffModule<AlgNum>& M, const std::vector<AlgNum>& x) {
    std::vector<AlgNum> out;
    for (const auto& A : M.gens) {
        const auto y = (A - Matrix<AlgNum>::identity(M.dim)) * x;
        out.insert(out.end(), y.begin(), y.end());
    }
    return out;
}

}  // namespace

std::size_t matrix_rank(const Matrix<AlgNum>& M) { return rank(M); }

std::size_t matrix_rank(const Matrix<cplx>& M, double rel_tol) {
    const auto s = singular_values(M);
    if (s.size() == 0 || s(0) == 0.0) return 0;
    std::size_t r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > rel_tol * s(0)) ++r;
    return r;
}

double rank_margin(const Matrix<cplx>& M, double rel_tol) {
    const auto s = singular_values(M);
    if (s.size() == 0 || s(0) == 0.0) return std::numeric_limits<double>::infinity();
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 1; i < s.size(); ++i) {
        const double q = s(i) / (rel_tol * s(0));
        const double d = q > 1 ? q : 1 / q;
        best = std::min(best, d);
    }
    return best;
}

CoeffModule<AlgNum> module_trivial(const Presentation& P, std::size_t m) {
    CoeffModule<AlgNum> M;
    M.dim = m;
    M.gens.assign(P.num_generators(), Matrix<AlgNum>::identity(m));
    M.gens_inv = M.gens;
    M.label = "trivial";
    return M;
}

CoeffModule<AlgNum> module_cyclic(const Presentation& P, const AlgNum& alpha, std::size_t k) {
    if (k == 0) throw std::invalid_argument("module_cyclic needs k >= 1");
    CoeffModule<AlgNum> M;
    M.dim = k;
    for (std::size_t j = 0; j < P.num_generators(); ++j) {
        const long h = P.h[j];
        M.gens.push_back(jordan_power(k, h).scaled(pow(alpha, h)));
        M.gens_inv.push_back(jordan_power(k, -h).scaled(pow(alpha, -h)));
    }
    M.label = "C[t]/(t-alpha)^" + std::to_string(k);
    return M;
}

CoeffModule<AlgNum> module_ad(const Representation& rho, AdKind kind) { return adjoint(rho.gens, rho.gens_inv, kind); }

CoeffModule<cplx> module_ad(const std::vector<Matrix<cplx>>& gens, AdKind kind) {
    std::vector<Matrix<cplx>> inv;
    for (const auto& g : gens) {
        const Eigen::MatrixXcd e = to_eigen(g).inverse();
        Matrix<cplx> m(g.rows(), g.cols());
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j) m(i, j) = e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        inv.push_back(m);
    }
    return adjoint(gens, inv, kind);
}

CoeffModule<AlgNum> submodule(const CoeffModule<AlgNum>& M, const Matrix<AlgNum>& basis) {
    const Adapted a = adapted_basis(M, basis);
    CoeffModule<AlgNum> S;
    S.dim = a.k;
    for (std::size_t j = 0; j < M.gens.size(); ++j) {
        S.gens.push_back((a.Qi * M.gens[j] * a.Q).block(0, 0, a.k, a.k));
        S.gens_inv.push_back((a.Qi * M.gens_inv[j] * a.Q).block(0, 0, a.k, a.k));
    }
    if (M.ambient) S.ambient = *M.ambient * basis;
    S.label = "sub(" + M.label + ")";
    return S;
}

QuotientModule<AlgNum> quotient(const CoeffModule<AlgNum>& M, const Matrix<AlgNum>& basis) {
    const Adapted a = adapted_basis(M, basis);
    const std::size_t q = M.dim - a.k;
    QuotientModule<AlgNum> out{{}, a.Qi.block(a.k, 0, q, M.dim)};
    out.module.dim = q;
    for (std::size_t j = 0; j < M.gens.size(); ++j) {
        out.module.gens.push_back((a.Qi * M.gens[j] * a.Q).block(a.k, a.k, q, q));
        out.module.gens_inv.push_back((a.Qi * M.gens_inv[j] * a.Q).block(a.k, a.k, q, q));
    }
    if (M.ambient) out.module.ambient = *M.ambient * a.Q.block(0, a.k, M.dim, q);
    out.module.label = M.label + "/sub";
    return out;
}

CoeffModule<AlgNum> filtration_C(const Representation& rho, std::size_t i) {
    const std::size_t n = rho.n;
    if (i >= n) throw std::invalid_argument("filtration index out of range");
    auto S = submodule(module_ad(rho, AdKind::gl), gl_columns(n, n - 1 - i));
    S.label = "C(" + std::to_string(i) + ")";
    return S;
}

CoeffModule<AlgNum> quotient_M(const Representation& rho) {
    const std::size_t n = rho.n;
    auto Q = quotient(module_ad(rho, AdKind::gl), gl_columns(n, 1));
    Matrix<AlgNum> e11(n * n, 1);
    e11(0, 0) = AlgNum(1);
    auto M = quotient(Q.module, Q.projection * e11).module;
    M.label = "M";
    return M;
}

bool action_is_valid(const Presentation& P, const CoeffModule<AlgNum>& M) {
    for (const auto& r : P.relators)
        if (!word_image(r, M.gens, M.gens_inv, Matrix<AlgNum>::identity(M.dim)).is_identity()) return false;
    return true;
}

CocycleBasis cocycle_basis(const Presentation& P, const CoeffModule<AlgNum>& M) {
    const std::size_t m = M.dim, g = P.num_generators();
    CocycleBasis out;
    if (P.relators.empty()) {
        for (std::size_t k = 0; k < g * m; ++k) {
            std::vector<AlgNum> e(g * m, AlgNum(0));
            e[k] = AlgNum(1);
            out.z1.push_back(e);
        }
    } else {
        out.z1 = kernel_basis(fox_jacobian(P, M));
    }
    Matrix<AlgNum> W(g * m, m + out.z1.size());
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<AlgNum> e(m, AlgNum(0));
        e[i] = AlgNum(1);
        const auto d = coboundary_of(M, e);
        for (std::size_t r = 0; r < d.size(); ++r) W(r, i) = d[r];
    }
    for (std::size_t c = 0; c < out.z1.size(); ++c)
        for (std::size_t r = 0; r < g * m; ++r) W(r, m + c) = out.z1[c][r];
    for (std::size_t p : rref(W).pivots)
        if (p >= m) out.h1_reps.push_back(out.z1[p - m]);
    return out;
}

std::optional<std::vector<AlgNum>> distinguished_cocycle(const Representation& rho, const CoeffModule<AlgNum>& ad) {
    if (!ad.ambient) throw std::invalid_argument("module has no gl(n) coordinates");
    const Presentation& P = rho.presentation;
    const std::size_t n = rho.n, m = ad.dim, g = P.num_generators();
    const std::size_t f = (n - 1) * n;  // (n, 1) entry
    const std::size_t mer = static_cast<std::size_t>(P.meridian);
    auto phi = [&](const std::vector<AlgNum>& v, std::size_t j) {
        AlgNum s(0);
        for (std::size_t c = 0; c < m; ++c)
            if (!is_zero((*ad.ambient)(f, c))) s += (*ad.ambient)(f, c) * v[j * m + c];
        return s;
    };
    Matrix<AlgNum> A(g, 1);
    for (std::size_t j = 0; j < g; ++j) A(j, 0) = pow(rho.alpha, -P.h[j]) - AlgNum(1);
    // coordinates of E_n^1
    std::vector<AlgNum> e(n * n, AlgNum(0));
    e[f] = AlgNum(1);
    auto x0 = solve_linear(*ad.ambient, e);
    if (!x0) return std::nullopt;
    const auto dx = coboundary_of(ad, x0->particular);
    const auto basis = cocycle_basis(P, ad);
    std::vector<std::vector<AlgNum>> candidates = basis.h1_reps;
    candidates.insert(candidates.end(), basis.z1.begin(), basis.z1.end());
    for (auto v : candidates) {
        std::vector<AlgNum> w;
        for (std::size_t j = 0; j < g; ++j) w.push_back(phi(v, j));
        if (solve_linear(A, w)) continue;  // principal
        const AlgNum c = phi(v, mer) / phi(dx, mer);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * dx[k];
        return v;
    }
    return std::nullopt;
}

CoeffModule<cplx> to_complex(const CoeffModule<AlgNum>& M, const EmbeddingPoint& point) {
    CoeffModule<cplx> C;
    C.dim = M.dim;
    C.label = M.label;
    for (const auto& g : M.gens) C.gens.push_back(to_complex(g, point));
    for (const auto& g : M.gens_inv) C.gens_inv.push_back(to_complex(g, point));
    if (M.ambient) C.ambient = to_complex(*M.ambient, point);
    return C;
}

}  // namespace knotrep
