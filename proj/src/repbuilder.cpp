#include "knotrep/repbuilder.hpp"

#include "knotrep/foxcalc.hpp"

namespace knotrep {

AlgMatrix jordan_power(std::size_t n, long m) {
    AlgMatrix J(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) J(i, j) = AlgNum(binomial(m, static_cast<long>(j - i)));
    return J;
}

Matrix<Rational> conjugator_P(std::size_t n) {
    if (n == 0) throw std::invalid_argument("conjugator_P needs n >= 1");
    Matrix<Rational> P(n, n);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j) {
            const Rational c = binomial(static_cast<long>(j), static_cast<long>(i));
            P(i - 1, j - 1) = (j % 2) ? Rational(-c) : c;
        }
    return P;
}

AlgMatrix to_alg(const Matrix<Rational>& m) {
    AlgMatrix a(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) a(i, j) = AlgNum(m(i, j));
    return a;
}

AlgRow row_times(const AlgRow& x, const AlgMatrix& m) {
    AlgRow out(m.cols(), AlgNum(0));
    for (std::size_t k = 0; k < m.cols(); ++k)
        for (std::size_t l = 0; l < x.size(); ++l)
            if (!is_zero(x[l]) && !is_zero(m(l, k))) out[k] += x[l] * m(l, k);
    return out;
}

Matrix<cplx> to_complex(const AlgMatrix& m, const EmbeddingPoint& point) {
    Matrix<cplx> c(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = to_complex(m(i, j), point);
    return c;
}

namespace {

// [[a, row], [0, B]] with row entries affine in the unknowns: entry 0 is the
// constant term, entry 1 + u the coefficient of unknown u.
using Affine = std::vector<AlgNum>;

struct SymBlock {
    AlgNum a;
    std::vector<Affine> row;
    AlgMatrix B;
};

SymBlock mul(const SymBlock& x, const SymBlock& y) {
    SymBlock r;
    r.a = x.a * y.a;
    r.B = x.B * y.B;
    const std::size_t m = y.row.size(), w = y.row[0].size();
    r.row.assign(m, Affine(w, AlgNum(0)));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t u = 0; u < w; ++u)
            if (!is_zero(y.row[k][u])) r.row[k][u] += x.a * y.row[k][u];
        for (std::size_t l = 0; l < m; ++l) {
            if (is_zero(y.B(l, k))) continue;
            for (std::size_t u = 0; u < w; ++u)
                if (!is_zero(x.row[l][u])) r.row[k][u] += x.row[l][u] * y.B(l, k);
        }
    }
    return r;
}

SymBlock inv(const SymBlock& x) {
    SymBlock r;
    r.a = inverse(x.a);
    r.B = inverse(x.B);
    const std::size_t m = x.row.size(), w = x.row[0].size();
    r.row.assign(m, Affine(w, AlgNum(0)));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) {
            if (is_zero(r.B(l, k))) continue;
            const AlgNum c = -(r.a * r.B(l, k));
            for (std::size_t u = 0; u < w; ++u)
                if (!is_zero(x.row[l][u])) r.row[k][u] += c * x.row[l][u];
        }
    return r;
}

SymBlock evaluate(const Word& w, const std::vector<SymBlock>& g, const std::vector<SymBlock>& gi) {
    SymBlock acc{AlgNum(1), std::vector<Affine>(g[0].row.size(), Affine(g[0].row[0].size(), AlgNum(0))),
                 AlgMatrix::identity(g[0].B.rows())};
    for (const auto& x : w.letters()) acc = mul(acc, x.exp > 0 ? g[static_cast<std::size_t>(x.gen)] : gi[static_cast<std::size_t>(x.gen)]);
    return acc;
}

// Every row entry of every relator image must vanish: rows of [A | b] with
// A u + b = 0.
void relator_equations(const Presentation& P, const std::vector<SymBlock>& g, std::vector<Affine>& eqs) {
    std::vector<SymBlock> gi;
    for (const auto& x : g) gi.push_back(inv(x));
    for (const auto& r : P.relators) {
        const SymBlock img = evaluate(r, g, gi);
        for (const auto& e : img.row) eqs.push_back(e);
    }
}

AlgMatrix block(const AlgNum& a, const AlgRow& row, const AlgMatrix& B) {
    const std::size_t n = B.rows() + 1;
    AlgMatrix M(n, n);
    M(0, 0) = a;
    for (std::size_t k = 0; k + 1 < n; ++k) M(0, k + 1) = row[k];
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j + 1 < n; ++j) M(i + 1, j + 1) = B(i, j);
    return M;
}

AlgRow top_row(const AlgMatrix& M) {
    AlgRow r;
    for (std::size_t k = 1; k < M.cols(); ++k) r.push_back(M(0, k));
    return r;
}

AlgMatrix lower_block(const AlgMatrix& M) {
    AlgMatrix B(M.rows() - 1, M.cols() - 1);
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j) B(i, j) = M(i + 1, j + 1);
    return B;
}

QPoly minimal_polynomial(const AlgNum& alpha) {
    if (alpha.is_rational()) return QPoly::from_coeffs({-alpha.rational(), Rational(1)});
    const auto& T = alpha.tower();
    if (T->depth() != 1 || alpha != T->generator())
        throw std::invalid_argument("alpha must be rational or the generator of a first-level tower");
    std::vector<Rational> c;
    for (const auto& x : T->modulus().coeffs()) c.push_back(x.rational());
    return QPoly::from_coeffs(c);
}

void finish(Representation& r) {
    r.gens_inv.clear();
    for (const auto& g : r.gens) r.gens_inv.push_back(inverse(g));
    if (auto bad = r.failing_relator())
        throw ConsistencyError("relator " + std::to_string(*bad) + " does not map to the identity");
}

}  // namespace

AlgMatrix Representation::image(const Word& w) const { return word_image(w, gens, gens_inv, AlgMatrix::identity(n)); }

std::optional<std::size_t> Representation::failing_relator() const {
    for (std::size_t i = 0; i < presentation.relators.size(); ++i)
        if (!image(presentation.relators[i]).is_identity()) return i;
    return std::nullopt;
}

AlgRow Representation::z_on(const Word& w) const {
    const long h = presentation.degree(w);
    const AlgRow row = top_row(image(w));
    switch (form) {
        case RepForm::tilde: return row_times(row, jordan_power(n - 1, h));
        case RepForm::upper: return row;
        case RepForm::sl: {
            AlgRow z = row;
            const AlgNum s = pow(*lambda, h);
            for (auto& x : z) x *= s;
            return z;
        }
    }
    return row;
}

AlgRow Representation::z_values(std::size_t j) const { return z_on(Word::generator(static_cast<int>(j))); }

CocycleData solve_cocycle_tower(const Presentation& P, const AlgNum& alpha, std::size_t n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (!check_hypothesis(P, minimal_polynomial(alpha), static_cast<unsigned>(n)))
        throw HypothesisError("(t - alpha)-torsion is not cyclic of exponent n - 1");
    const std::size_t m = n - 1, g = P.num_generators(), U = m * g;
    std::vector<SymBlock> gens;
    for (std::size_t j = 0; j < g; ++j) {
        const long h = P.h[j];
        SymBlock s{pow(alpha, h), {}, jordan_power(m, -h)};
        // row = ztilde(S_j) J^-h with ztilde(S_j)_l = unknown j*m + l
        for (std::size_t k = 0; k < m; ++k) {
            Affine e(U + 1, AlgNum(0));
            for (std::size_t l = 0; l <= k; ++l) e[1 + j * m + l] = s.B(l, k);
            s.row.push_back(e);
        }
        gens.push_back(std::move(s));
    }
    std::vector<Affine> eqs;
    if (U > 0 && !P.relators.empty()) relator_equations(P, gens, eqs);
    for (std::size_t l = 0; l < m; ++l) {
        Affine e(U + 1, AlgNum(0));
        e[1 + static_cast<std::size_t>(P.meridian) * m + l] = AlgNum(1);
        eqs.push_back(e);
    }
    AlgMatrix A(eqs.size(), U);
    for (std::size_t i = 0; i < eqs.size(); ++i)
        for (std::size_t u = 0; u < U; ++u) A(i, u) = eqs[i][u + 1];
    CocycleData d{P, alpha, n, {}};
    for (const auto& v : kernel_basis(A)) {
        d.ztilde.assign(g, AlgRow(m));
        for (std::size_t j = 0; j < g; ++j)
            for (std::size_t l = 0; l < m; ++l) d.ztilde[j][l] = v[j * m + l];
        if (!is_principal(d)) return d;
    }
    throw ConsistencyError("hypothesis holds but every solution has principal ztilde_1");
}

bool is_principal(const CocycleData& d) {
    const std::size_t g = d.presentation.num_generators();
    AlgMatrix A(g, 1);
    std::vector<AlgNum> b;
    for (std::size_t j = 0; j < g; ++j) {
        A(j, 0) = pow(d.alpha, d.presentation.h[j]) - AlgNum(1);
        b.push_back(d.ztilde[j][0]);
    }
    return solve_linear(A, b).has_value();
}

Representation build_tilde_rho(const CocycleData& d) {
    Representation r{d.presentation, d.n, RepForm::tilde, d.alpha, std::nullopt, {}, {}};
    for (std::size_t j = 0; j < d.presentation.num_generators(); ++j) {
        const long h = d.presentation.h[j];
        const AlgMatrix Jm = jordan_power(d.n - 1, -h);
        r.gens.push_back(block(pow(d.alpha, h), row_times(d.ztilde[j], Jm), Jm));
    }
    finish(r);
    return r;
}

Representation to_upper_form(const Representation& tilde) {
    if (tilde.form != RepForm::tilde) throw std::invalid_argument("to_upper_form expects the tilde form");
    const std::size_t m = tilde.n - 1;
    const AlgMatrix P = to_alg(conjugator_P(m));
    const AlgMatrix Q = block(AlgNum(1), AlgRow(m, AlgNum(0)), P);  // Q = Q^-1
    Representation r = tilde;
    r.form = RepForm::upper;
    r.gens.clear();
    for (const auto& g : tilde.gens) r.gens.push_back(Q * g * Q);
    finish(r);
    for (std::size_t j = 0; j < r.gens.size(); ++j) {
        const AlgRow zt = tilde.z_values(j), z = r.z_values(j);
        if (z != row_times(row_times(zt, P), jordan_power(m, r.presentation.h[j])) || z[0] != -zt[0])
            throw ConsistencyError("z = ztilde P J^h fails on a generator");
    }
    return r;
}

Representation normalize_sl(const Representation& upper, const AlgNum& lambda) {
    if (upper.form != RepForm::upper) throw std::invalid_argument("normalize_sl expects the upper form");
    if (pow(lambda, static_cast<long>(upper.n)) != upper.alpha) throw std::invalid_argument("lambda^n != alpha");
    Representation r = upper;
    r.form = RepForm::sl;
    r.lambda = lambda;
    r.gens.clear();
    for (std::size_t j = 0; j < upper.gens.size(); ++j) {
        const AlgNum s = pow(lambda, -upper.presentation.h[j]);
        AlgMatrix g = upper.gens[j];
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t k = 0; k < g.cols(); ++k) g(i, k) = s * g(i, k);
        r.gens.push_back(g);
    }
    finish(r);
    for (const auto& g : r.gens)
        if (det(g) != AlgNum(1)) throw ConsistencyError("determinant is not 1");
    return r;
}

UpgradeResult upgrade_obstruction(const Representation& rho) {
    Representation upper = rho;
    if (rho.form == RepForm::sl) {
        upper.form = RepForm::upper;
        for (std::size_t j = 0; j < upper.gens.size(); ++j) {
            const AlgNum s = pow(*rho.lambda, rho.presentation.h[j]);
            for (std::size_t i = 0; i < rho.n; ++i)
                for (std::size_t k = 0; k < rho.n; ++k) upper.gens[j](i, k) = s * rho.gens[j](i, k);
        }
    }
    const bool tilde = upper.form == RepForm::tilde;
    const Presentation& P = upper.presentation;
    const std::size_t n = upper.n, g = P.num_generators();
    std::vector<SymBlock> gens;
    for (std::size_t j = 0; j < g; ++j) {
        const long h = P.h[j];
        SymBlock s{pow(upper.alpha, h), {}, jordan_power(n, tilde ? -h : h)};
        AlgRow z = upper.z_values(j);
        // (z, u_j), times J_n^-h in the tilde form
        for (std::size_t k = 0; k < n; ++k) {
            Affine e(g + 1, AlgNum(0));
            if (tilde) {
                for (std::size_t l = 0; l <= k; ++l)
                    if (l + 1 < n) e[0] += z[l] * s.B(l, k);
                e[1 + j] = s.B(n - 1, k);
            } else if (k + 1 < n) {
                e[0] = z[k];
            } else {
                e[1 + j] = AlgNum(1);
            }
            s.row.push_back(e);
        }
        gens.push_back(std::move(s));
    }
    std::vector<Affine> eqs;
    if (!P.relators.empty()) relator_equations(P, gens, eqs);
    AlgMatrix A(eqs.size(), g);
    std::vector<AlgNum> b;
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        for (std::size_t u = 0; u < g; ++u) A(i, u) = eqs[i][u + 1];
        b.push_back(-eqs[i][0]);
    }
    UpgradeResult out;
    if (auto sol = solve_linear(A, b)) {
        out.obstructed = false;
        out.witness = sol->particular;
    }
    return out;
}

Representation normalize_cocycle_at(const Representation& rho, std::size_t gen) {
    const AlgMatrix& G = rho.gens.at(gen);
    const AlgNum a = G(0, 0);
    AlgMatrix D = lower_block(G);
    for (std::size_t i = 0; i < D.rows(); ++i) D(i, i) -= a;
    // c (B - a I) = -r
    AlgRow c = row_times(top_row(G), inverse(D));
    for (auto& x : c) x = -x;
    AlgRow mc = c;
    for (auto& x : mc) x = -x;
    const AlgMatrix C = block(AlgNum(1), c, AlgMatrix::identity(rho.n - 1));
    const AlgMatrix Ci = block(AlgNum(1), mc, AlgMatrix::identity(rho.n - 1));
    Representation r = rho;
    for (auto& x : r.gens) x = C * x * Ci;
    finish(r);
    return r;
}

CocycleData normalize_cocycle_at(const CocycleData& d, std::size_t gen) {
    const Representation r = normalize_cocycle_at(build_tilde_rho(d), gen);
    CocycleData out = d;
    for (std::size_t j = 0; j < out.ztilde.size(); ++j) out.ztilde[j] = r.z_values(j);
    return out;
}

CocycleData principal_cocycle(const Presentation& P, const AlgNum& alpha, std::size_t n, const AlgNum& c) {
    CocycleData d{P, alpha, n, {}};
    AlgRow c0(n - 1, AlgNum(0));
    c0[0] = c;
    for (std::size_t j = 0; j < P.num_generators(); ++j) {
        const long h = P.h[j];
        AlgRow z = row_times(c0, jordan_power(n - 1, h));
        for (auto& x : z) x *= pow(alpha, h);
        z[0] -= c;
        d.ztilde.push_back(z);
    }
    return d;
}

}  // namespace knotrep
