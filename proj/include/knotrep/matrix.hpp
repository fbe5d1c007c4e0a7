#pragma once

// Dense matrices over an exact ring, and Gauss-Jordan linear algebra when
// the ring is a field (Rational or AlgNum).

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "knotrep/poly.hpp"

namespace knotrep {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}
    Matrix(std::size_t r, std::size_t c, const T& fill) : r_(r), c_(c), a_(r * c, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }
    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty()) return Matrix();
        Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.c_) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }
    static Matrix column(const std::vector<T>& v) {
        Matrix m(v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool square() const { return r_ == c_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                              a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
    }
    std::vector<T> col(std::size_t j) const {
        std::vector<T> v;
        v.reserve(r_);
        for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    void swap_rows(std::size_t i, std::size_t k) {
        if (i == k) return;
        for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k) {
        if (j == k) return;
        for (std::size_t i = 0; i < r_; ++i) std::swap((*this)(i, j), (*this)(i, k));
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > r_ || c0 + nc > c_) throw std::out_of_range("matrix block out of range");
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        if (r0 + b.r_ > r_ || c0 + b.c_ > c_) throw std::out_of_range("matrix block out of range");
        for (std::size_t i = 0; i < b.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!detail::coeff_zero(x)) return false;
        return true;
    }
    bool is_identity() const { return square() && *this == identity(r_); }

    Matrix operator-() const {
        Matrix m = *this;
        for (auto& x : m.a_) x = -x;
        return m;
    }
    friend Matrix operator+(Matrix a, const Matrix& b) {
        check_same(a, b);
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] = a.a_[k] + b.a_[k];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b) {
        check_same(a, b);
        for (std::size_t k = 0; k < a.a_.size(); ++k) a.a_[k] = a.a_[k] - b.a_[k];
        return a;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
        Matrix m(a.r_, b.c_);
        for (std::size_t i = 0; i < a.r_; ++i)
            for (std::size_t k = 0; k < a.c_; ++k) {
                const T& x = a(i, k);
                if (detail::coeff_zero(x)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) = m(i, j) + x * b(k, j);
            }
        return m;
    }
    Matrix scaled(const T& s) const {
        Matrix m = *this;
        for (auto& x : m.a_) x = s * x;
        return m;
    }
    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
    Matrix& operator-=(const Matrix& o) { return *this = *this - o; }
    Matrix& operator*=(const Matrix& o) { return *this = *this * o; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) return false;
        for (std::size_t k = 0; k < a.a_.size(); ++k)
            if (!(a.a_[k] == b.a_[k])) return false;
        return true;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    template <class U, class Fn>
    Matrix<U> map(Fn f) const {
        Matrix<U> m(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) m(i, j) = f((*this)(i, j));
        return m;
    }

    const std::vector<T>& data() const { return a_; }

private:
    static void check_same(const Matrix& a, const Matrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<T> out(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] = out[i] + a(i, j) * v[j];
    return out;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix<T> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix<T> m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

template <class T>
Matrix<T> matrix_pow(const Matrix<T>& a, long e) {
    if (!a.square()) throw std::invalid_argument("power of non-square matrix");
    if (e < 0) throw std::invalid_argument("negative power needs an inverse");
    Matrix<T> r = Matrix<T>::identity(a.rows()), b = a;
    auto k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1u) r = r * b;
        k >>= 1u;
        if (k) b = b * b;
    }
    return r;
}

template <class T>
T trace(const Matrix<T>& a) {
    T s(0);
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s = s + a(i, i);
    return s;
}

// ---- field linear algebra -------------------------------------------------

template <class T>
struct Rref {
    Matrix<T> R;
    std::vector<std::size_t> pivots;  // pivot column of row k
};

namespace detail {

template <class T>
std::optional<std::size_t> find_pivot(const Matrix<T>& R, std::size_t from, std::size_t c) {
    for (std::size_t i = from; i < R.rows(); ++i)
        if (!coeff_zero(R(i, c))) return i;
    return std::nullopt;
}

template <class T>
void normalize_pivot_row(Matrix<T>& R, std::size_t p, std::size_t c) {
    const T inv = inverse(R(p, c));
    for (std::size_t j = c; j < R.cols(); ++j) R(p, j) = R(p, j) * inv;
    R(p, c) = T(1);
}

template <class T>
void eliminate_row(Matrix<T>& R, std::size_t i, std::size_t p, std::size_t c) {
    if (i == p || coeff_zero(R(i, c))) return;
    const T f = R(i, c);
    for (std::size_t j = c; j < R.cols(); ++j) {
        if (coeff_zero(R(p, j))) continue;
        R(i, j) = R(i, j) - f * R(p, j);
    }
    R(i, c) = T(0);
}

}  // namespace detail

// Reference Gauss-Jordan elimination.
template <class T>
Rref<T> rref_serial(Matrix<T> M, std::size_t col_limit = static_cast<std::size_t>(-1)) {
    Rref<T> out;
    std::size_t r = 0;
    const std::size_t nc = std::min(M.cols(), col_limit);
    for (std::size_t c = 0; c < nc && r < M.rows(); ++c) {
        auto p = detail::find_pivot(M, r, c);
        if (!p) continue;
        M.swap_rows(r, *p);
        detail::normalize_pivot_row(M, r, c);
        for (std::size_t i = 0; i < M.rows(); ++i) detail::eliminate_row(M, i, r, c);
        out.pivots.push_back(c);
        ++r;
    }
    out.R = std::move(M);
    return out;
}

// Same elimination with the row updates of each pivot step spread over
// OpenMP threads. Pivot search and inversion stay serial, so the result is
// identical to rref_serial, including which zero divisor raises first.
template <class T>
Rref<T> rref_parallel(Matrix<T> M, std::size_t col_limit = static_cast<std::size_t>(-1)) {
    Rref<T> out;
    std::size_t r = 0;
    const std::size_t nc = std::min(M.cols(), col_limit);
    const long nrows = static_cast<long>(M.rows());
    for (std::size_t c = 0; c < nc && r < M.rows(); ++c) {
        auto p = detail::find_pivot(M, r, c);
        if (!p) continue;
        M.swap_rows(r, *p);
        detail::normalize_pivot_row(M, r, c);
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 4)
        for (long i = 0; i < nrows; ++i) {
            try {
                detail::eliminate_row(M, static_cast<std::size_t>(i), r, c);
            } catch (...) {
#pragma omp critical(knotrep_rref_err)
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        out.pivots.push_back(c);
        ++r;
    }
    out.R = std::move(M);
    return out;
}

// Below this many entries the threading overhead dominates.
inline constexpr std::size_t kParallelRrefEntries = 4096;

template <class T>
Rref<T> rref(Matrix<T> M, std::size_t col_limit = static_cast<std::size_t>(-1)) {
    if (M.rows() * M.cols() >= kParallelRrefEntries) return rref_parallel(std::move(M), col_limit);
    return rref_serial(std::move(M), col_limit);
}

template <class T>
std::size_t rank(const Matrix<T>& M) {
    return rref(M).pivots.size();
}

template <class T>
std::vector<std::vector<T>> kernel_from_rref(const Rref<T>& E) {
    const std::size_t n = E.R.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : E.pivots) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<T> v(n, T(0));
        v[f] = T(1);
        for (std::size_t k = 0; k < E.pivots.size(); ++k) v[E.pivots[k]] = -E.R(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& M) {
    return kernel_from_rref(rref(M));
}

template <class T>
struct Solution {
    std::vector<T> particular;
    std::vector<std::vector<T>> kernel;
};

// All x with M x = b, or nullopt when infeasible.
template <class T>
std::optional<Solution<T>> solve_linear(const Matrix<T>& M, const std::vector<T>& b) {
    if (b.size() != M.rows()) throw std::invalid_argument("right-hand side has wrong length");
    Matrix<T> aug = hstack(M, Matrix<T>::column(b));
    Rref<T> E = rref(std::move(aug), M.cols());
    for (std::size_t i = E.pivots.size(); i < M.rows(); ++i)
        if (!detail::coeff_zero(E.R(i, M.cols()))) return std::nullopt;
    Solution<T> s;
    s.particular.assign(M.cols(), T(0));
    for (std::size_t k = 0; k < E.pivots.size(); ++k) s.particular[E.pivots[k]] = E.R(k, M.cols());
    Rref<T> K{E.R.block(0, 0, E.R.rows(), M.cols()), E.pivots};
    s.kernel = kernel_from_rref(K);
    return s;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& M) {
    if (!M.square()) throw std::invalid_argument("inverse of non-square matrix");
    const std::size_t n = M.rows();
    Rref<T> E = rref(hstack(M, Matrix<T>::identity(n)), n);
    if (E.pivots.size() != n) throw std::domain_error("matrix is singular");
    return E.R.block(0, n, n, n);
}

template <class T>
T det(Matrix<T> M) {
    if (!M.square()) throw std::invalid_argument("determinant of non-square matrix");
    T d(1);
    const std::size_t n = M.rows();
    for (std::size_t c = 0; c < n; ++c) {
        auto p = detail::find_pivot(M, c, c);
        if (!p) return T(0);
        if (*p != c) {
            M.swap_rows(c, *p);
            d = -d;
        }
        d = d * M(c, c);
        const T inv = inverse(M(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (detail::coeff_zero(M(i, c))) continue;
            const T f = M(i, c) * inv;
            for (std::size_t j = c; j < n; ++j) M(i, j) = M(i, j) - f * M(c, j);
        }
    }
    return d;
}

// Columns of B extended by standard basis vectors to a basis of T^m; the
// result is the invertible matrix [B | C].
template <class T>
Matrix<T> complete_basis(const Matrix<T>& B) {
    const std::size_t m = B.rows();
    Matrix<T> cur = B;
    std::size_t r = rank(B);
    if (r != B.cols()) throw std::invalid_argument("subspace basis is not independent");
    for (std::size_t e = 0; e < m && cur.cols() < m; ++e) {
        Matrix<T> unit(m, 1);
        unit(e, 0) = T(1);
        Matrix<T> trial = hstack(cur, unit);
        if (rank(trial) > r) {
            cur = std::move(trial);
            ++r;
        }
    }
    return cur;
}

template <class T>
std::string to_string(const Matrix<T>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) s += ", ";
            s += to_string(m(i, j));
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace knotrep
