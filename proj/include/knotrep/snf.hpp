#pragma once

// Smith normal form over F[t] for an exact field F.

#include <optional>
#include <vector>

#include "knotrep/laurent.hpp"
#include "knotrep/matrix.hpp"

namespace knotrep {

template <class F>
struct SmithForm {
    std::vector<Poly<F>> divisors;  // nonzero invariant factors, monic, d_i | d_{i+1}
    std::size_t zero_count = 0;     // trailing zero diagonal entries
    Matrix<Poly<F>> D, U, V;        // U * M * V = D
};

namespace detail {

template <class F>
struct SnfState {
    Matrix<Poly<F>> A, U, V;

    void row_axpy(std::size_t dst, std::size_t src, const Poly<F>& q) {  // row dst -= q * row src
        for (std::size_t j = 0; j < A.cols(); ++j)
            if (!A(src, j).is_zero()) A(dst, j) -= q * A(src, j);
        for (std::size_t j = 0; j < U.cols(); ++j)
            if (!U(src, j).is_zero()) U(dst, j) -= q * U(src, j);
    }
    void col_axpy(std::size_t dst, std::size_t src, const Poly<F>& q) {  // col dst -= q * col src
        for (std::size_t i = 0; i < A.rows(); ++i)
            if (!A(i, src).is_zero()) A(i, dst) -= q * A(i, src);
        for (std::size_t i = 0; i < V.rows(); ++i)
            if (!V(i, src).is_zero()) V(i, dst) -= q * V(i, src);
    }
    void swap_rows(std::size_t a, std::size_t b) {
        A.swap_rows(a, b);
        U.swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        A.swap_cols(a, b);
        V.swap_cols(a, b);
    }

    // Minimal degree, then minimal column, then minimal row.
    std::optional<std::pair<std::size_t, std::size_t>> pick(std::size_t k) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        int best_deg = 0;
        for (std::size_t j = k; j < A.cols(); ++j)
            for (std::size_t i = k; i < A.rows(); ++i) {
                const auto& x = A(i, j);
                if (x.is_zero()) continue;
                if (!best || x.degree() < best_deg) {
                    best = {i, j};
                    best_deg = x.degree();
                }
            }
        return best;
    }
};

}  // namespace detail

template <class F>
SmithForm<F> smith_normal_form(const Matrix<Poly<F>>& M) {
    using P = Poly<F>;
    detail::SnfState<F> s{M, Matrix<P>::identity(M.rows()), Matrix<P>::identity(M.cols())};
    const std::size_t kmax = std::min(M.rows(), M.cols());
    std::size_t k = 0;
    for (; k < kmax; ++k) {
        auto piv = s.pick(k);
        if (!piv) break;
        s.swap_rows(k, piv->first);
        s.swap_cols(k, piv->second);
        for (;;) {
            bool dirty = false;
            for (std::size_t i = k + 1; i < M.rows(); ++i) {
                if (s.A(i, k).is_zero()) continue;
                auto [q, r] = divmod(s.A(i, k), s.A(k, k));
                s.row_axpy(i, k, q);
                if (!r.is_zero()) dirty = true;
            }
            for (std::size_t j = k + 1; j < M.cols(); ++j) {
                if (s.A(k, j).is_zero()) continue;
                auto [q, r] = divmod(s.A(k, j), s.A(k, k));
                s.col_axpy(j, k, q);
                if (!r.is_zero()) dirty = true;
            }
            if (dirty) {
                // a remainder of smaller degree sits in row or column k; move it to the corner
                std::size_t bi = k, bj = k;
                int bd = s.A(k, k).degree();
                for (std::size_t i = k + 1; i < M.rows(); ++i)
                    if (!s.A(i, k).is_zero() && s.A(i, k).degree() < bd) bi = i, bj = k, bd = s.A(i, k).degree();
                for (std::size_t j = k + 1; j < M.cols(); ++j)
                    if (!s.A(k, j).is_zero() && s.A(k, j).degree() < bd) bi = k, bj = j, bd = s.A(k, j).degree();
                s.swap_rows(k, bi);
                s.swap_cols(k, bj);
                continue;
            }
            // row and column clean; enforce divisibility of the remaining block
            std::optional<std::size_t> bad_row;
            for (std::size_t i = k + 1; i < M.rows() && !bad_row; ++i)
                for (std::size_t j = k + 1; j < M.cols(); ++j)
                    if (!divides(s.A(k, k), s.A(i, j))) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row) break;
            s.row_axpy(k, *bad_row, P(-1L));
        }
        const F inv = inverse(s.A(k, k).lead());
        for (std::size_t j = 0; j < M.cols(); ++j) s.A(k, j) = s.A(k, j).scaled(inv);
        for (std::size_t j = 0; j < s.U.cols(); ++j) s.U(k, j) = s.U(k, j).scaled(inv);
    }
    SmithForm<F> out;
    for (std::size_t i = 0; i < k; ++i) out.divisors.push_back(s.A(i, i));
    out.zero_count = kmax - k;
    out.D = std::move(s.A);
    out.U = std::move(s.U);
    out.V = std::move(s.V);
    return out;
}

// Laurent input: row i is first multiplied by t^shift[i] so every entry is
// an ordinary polynomial. U * diag(t^shift) * M * V = D.
struct LaurentSmithForm {
    SmithForm<Rational> snf;
    std::vector<long> row_shift;
};

LaurentSmithForm smith_normal_form(const Matrix<LaurentPoly>& M);

}  // namespace knotrep
