#pragma once

// Independent reference computations used to freeze expected values.
// They avoid the library's elimination code paths on purpose.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "knotrep/laurent.hpp"
#include "knotrep/matrix.hpp"

namespace oracle {

using knotrep::QPoly;
using knotrep::Rational;

// Laplace expansion along the first row.
inline QPoly laplace_det(const std::vector<std::vector<QPoly>>& a) {
    const std::size_t n = a.size();
    if (n == 0) return QPoly(1L);
    if (n == 1) return a[0][0];
    QPoly acc;
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero()) continue;
        std::vector<std::vector<QPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<QPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        QPoly term = a[0][j] * laplace_det(minor);
        if (j % 2) acc -= term;
        else acc += term;
    }
    return acc;
}

inline void combinations(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return;
    for (;;) {
        fn(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Monic gcd of all k x k minors; 1 for k = 0.
inline QPoly determinantal_divisor(const knotrep::Matrix<QPoly>& M, std::size_t k) {
    if (k == 0) return QPoly(1L);
    QPoly g;
    combinations(M.rows(), k, [&](const std::vector<std::size_t>& rows) {
        combinations(M.cols(), k, [&](const std::vector<std::size_t>& cols) {
            std::vector<std::vector<QPoly>> sub;
            for (auto r : rows) {
                std::vector<QPoly> row;
                for (auto c : cols) row.push_back(M(r, c));
                sub.push_back(row);
            }
            g = knotrep::gcd(g, laplace_det(sub));
        });
    });
    return g;
}

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}.
inline std::vector<QPoly> invariant_factors(const knotrep::Matrix<QPoly>& M) {
    std::vector<QPoly> out;
    QPoly prev(1L);
    for (std::size_t k = 1; k <= std::min(M.rows(), M.cols()); ++k) {
        QPoly Dk = determinantal_divisor(M, k);
        if (Dk.is_zero()) break;
        out.push_back(knotrep::divmod(Dk, prev).first.monic());
        prev = Dk;
    }
    return out;
}

}  // namespace oracle

namespace gen {

using knotrep::QPoly;
using knotrep::Rational;

inline Rational small_rational(std::mt19937_64& rng, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> d(lo, hi);
    return Rational(d(rng));
}

inline QPoly random_qpoly(std::mt19937_64& rng, int max_deg, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    const int d = deg(rng);
    std::vector<Rational> c;
    for (int i = 0; i <= d; ++i) c.push_back(small_rational(rng, lo, hi));
    return QPoly::from_coeffs(c);
}

inline knotrep::Matrix<QPoly> random_poly_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int max_deg) {
    knotrep::Matrix<QPoly> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = random_qpoly(rng, max_deg);
    return m;
}

}  // namespace gen

#include "knotrep/presentation.hpp"

namespace oracle {

// Abelianized Fox matrix computed straight from the letters, rows shifted
// so no negative powers remain. Returns polynomials in t.
inline knotrep::Matrix<QPoly> abelian_fox_matrix(const knotrep::Presentation& P) {
    const std::size_t g = P.num_generators();
    knotrep::Matrix<QPoly> A(P.relators.size(), g);
    for (std::size_t r = 0; r < P.relators.size(); ++r) {
        std::map<std::pair<std::size_t, long>, long> terms;  // (gen, exponent) -> coefficient
        long deg = 0, lo = 0;
        for (const auto& x : P.relators[r].letters()) {
            const long hx = P.h[static_cast<std::size_t>(x.gen)];
            if (x.exp > 0) {
                terms[{static_cast<std::size_t>(x.gen), deg}] += 1;
                lo = std::min(lo, deg);
                deg += hx;
            } else {
                deg -= hx;
                terms[{static_cast<std::size_t>(x.gen), deg}] -= 1;
                lo = std::min(lo, deg);
            }
        }
        for (const auto& [key, c] : terms) {
            if (c == 0) continue;
            A(r, key.first) += QPoly::monomial(Rational(c), static_cast<std::size_t>(key.second - lo));
        }
    }
    return A;
}

// Canonical generator of the first elementary ideal: gcd of all maximal
// minors of the full Fox matrix (no column is deleted).
inline QPoly alexander_by_minors(const knotrep::Presentation& P) {
    if (P.num_generators() == 1) return QPoly(1L);
    auto A = abelian_fox_matrix(P);
    return knotrep::canonical_form(determinantal_divisor(A, P.num_generators() - 1));
}

}  // namespace oracle
