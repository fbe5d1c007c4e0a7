#include "knotrep/deform.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <random>
#include <sstream>

namespace knotrep {

Tolerances Tolerances::parse(const std::string& spec) {
    Tolerances t;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("tolerance entry without '=': " + item);
        std::string key = item.substr(0, eq), val = item.substr(eq + 1);
        key.erase(0, key.find_first_not_of(" \t"));
        key.erase(key.find_last_not_of(" \t") + 1);
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(val, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad tolerance value for " + key);
        }
        if (val.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("bad tolerance value for " + key);
        if (key == "embed") t.embed = x;
        else if (key == "cocycle") t.cocycle = x;
        else if (key == "newton") t.newton = x;
        else if (key == "max_iter") t.max_iter = static_cast<int>(x);
        else if (key == "diverge_steps") t.diverge_steps = static_cast<int>(x);
        else if (key == "newton_start") t.newton_start = x;
        else if (key == "burnside") t.burnside = x;
        else if (key == "indeterminate") t.indeterminate = x;
        else if (key == "eigen_gap") t.eigen_gap = x;
        else if (key == "trace") t.trace = x;
        else if (key == "commutator") t.commutator = x;
        else if (key == "det") t.det = x;
        else throw std::invalid_argument("unknown tolerance key: " + key);
    }
    return t;
}

Tolerances Tolerances::from_env() {
    const char* s = std::getenv("KNOTREP_TOL");
    return s ? parse(s) : Tolerances{};
}

namespace {

double inf_norm(const CMat& m) {
    double best = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) best = std::max(best, m.row(i).cwiseAbs().sum());
    return best;
}

Matrix<cplx> to_matrix(const CMat& m) {
    Matrix<cplx> out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
    return out;
}

CMat letter(const FloatRep& r, const std::vector<CMat>& inv, const Letter& x) {
    return x.exp > 0 ? r.gens[static_cast<std::size_t>(x.gen)] : inv[static_cast<std::size_t>(x.gen)];
}

std::vector<CMat> inverses(const std::vector<CMat>& g) {
    std::vector<CMat> out;
    for (const auto& m : g) out.push_back(m.inverse());
    return out;
}

std::size_t second_generator(const Presentation& P) {
    return (static_cast<std::size_t>(P.meridian) + 1) % P.num_generators();
}

// Orthonormal basis of the span of the columns; singular values below
// tol * largest are cut. Flags a singular value within the borderline band.
CMat orth(const CMat& A, const Tolerances& tol, bool& borderline) {
    Eigen::BDCSVD<CMat> svd(A, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    if (s.size() && s(0) > 0) {
        const double cut = tol.burnside * s(0);
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            if (s(i) > cut) ++r;
            if (s(i) > cut / tol.indeterminate && s(i) < cut * tol.indeterminate) borderline = true;
        }
    }
    return svd.matrixU().leftCols(r);
}

CMat unit_column(const CMat& m) {
    CMat v = m.reshaped<Eigen::RowMajor>();
    const double nv = v.norm();
    if (nv > 0) v /= nv;
    return v;
}

template <bool Parallel>
BurnsideResult burnside_impl(const std::vector<CMat>& mats, const Tolerances& tol) {
    if (mats.empty()) throw std::invalid_argument("burnside closure needs at least one matrix");
    const Eigen::Index n = mats[0].rows();
    BurnsideResult res;
    CMat start(n * n, static_cast<Eigen::Index>(mats.size()) + 1);
    start.col(0) = unit_column(CMat::Identity(n, n));
    for (std::size_t j = 0; j < mats.size(); ++j) start.col(static_cast<Eigen::Index>(j) + 1) = unit_column(mats[j]);
    bool borderline = false;
    CMat Q = orth(start, tol, borderline);
    for (;;) {
        const Eigen::Index d = Q.cols(), g = static_cast<Eigen::Index>(mats.size());
        CMat next(n * n, d + d * g);
        next.leftCols(d) = Q;
        const long jobs = static_cast<long>(d * g);
#pragma omp parallel for schedule(static) if (Parallel)
        for (long job = 0; job < jobs; ++job) {
            const Eigen::Index i = job / g, j = job % g;
            const CMat B = Q.col(i).reshaped<Eigen::RowMajor>(n, n);
            next.col(d + job) = unit_column(B * mats[static_cast<std::size_t>(j)]);
        }
        borderline = false;
        CMat Q2 = orth(next, tol, borderline);
        if (Q2.cols() == d) {
            res.dim = static_cast<std::size_t>(d);
            res.indeterminate = borderline;
            return res;
        }
        Q = std::move(Q2);
    }
}

}  // namespace

CMat FloatRep::image(const Word& w) const {
    const auto inv = inverses(gens);
    CMat p = CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& x : w.letters()) p = p * letter(*this, inv, x);
    return p;
}

double FloatRep::residual() const {
    const auto inv = inverses(gens);
    double r = 0;
    const CMat I = CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto& w : presentation.relators) {
        CMat p = I;
        for (const auto& x : w.letters()) p = p * letter(*this, inv, x);
        r = std::max(r, inf_norm(p - I));
    }
    return r;
}

FloatRep embed_float(const Representation& rho, const EmbeddingPoint& point, const Tolerances& tol) {
    FloatRep f{rho.presentation, rho.n, {}, 0.0, "embedded"};
    for (const auto& g : rho.gens) {
        CMat m(static_cast<Eigen::Index>(rho.n), static_cast<Eigen::Index>(rho.n));
        for (std::size_t i = 0; i < rho.n; ++i)
            for (std::size_t j = 0; j < rho.n; ++j)
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_complex(g(i, j), point);
        f.gens.push_back(m);
    }
    const double r = f.residual();
    if (!(r < tol.embed)) throw NumericError("embedding is not consistent with the tower: residual " + std::to_string(r));
    return f;
}

CMat sl_matrix(const std::vector<cplx>& coords, std::size_t n) {
    if (coords.size() + 1 != n * n) throw std::invalid_argument("sl coordinate vector has the wrong length");
    CMat X = CMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    cplx tr = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        X(static_cast<Eigen::Index>(k / n), static_cast<Eigen::Index>(k % n)) = coords[k];
        if (k / n == k % n) tr += coords[k];
    }
    X(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n - 1)) = -tr;
    return X;
}

FloatRep first_order(const FloatRep& rho, const std::vector<cplx>& v, double t, const Tolerances& tol) {
    const std::size_t n = rho.n, m = n * n - 1, g = rho.gens.size();
    if (v.size() != g * m) throw std::invalid_argument("direction has the wrong length");
    std::vector<Matrix<cplx>> gm;
    for (const auto& x : rho.gens) gm.push_back(to_matrix(x));
    const auto ad = module_ad(gm, AdKind::sl);
    if (!rho.presentation.relators.empty()) {
        const auto Jv = fox_jacobian(rho.presentation, ad) * v;
        double res = 0, scale = 1;
        for (const auto& x : Jv) res = std::max(res, std::abs(x));
        for (const auto& x : v) scale = std::max(scale, std::abs(x));
        if (!(res / scale < tol.cocycle)) throw std::invalid_argument("direction is not a cocycle");
    }
    FloatRep out = rho;
    out.t = t;
    out.provenance = "first order";
    const CMat I = CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < g; ++j) {
        const std::vector<cplx> vj(v.begin() + static_cast<long>(j * m), v.begin() + static_cast<long>((j + 1) * m));
        out.gens[j] = (I + t * sl_matrix(vj, n)) * rho.gens[j];
    }
    return out;
}

FloatRep newton_project(const FloatRep& rho, const Tolerances& tol, NewtonTrace* trace) {
    const Presentation& P = rho.presentation;
    const std::size_t n = rho.n, g = rho.gens.size(), nn = n * n;
    const Eigen::Index N = static_cast<Eigen::Index>(n);
    NewtonTrace local;
    NewtonTrace& tr = trace ? *trace : local;
    tr = NewtonTrace{};
    FloatRep cur = rho;
    cur.provenance = "newton";

    // free unknowns: (generator, entry) pairs
    std::vector<std::pair<std::size_t, std::size_t>> free;
    const std::size_t mer = static_cast<std::size_t>(P.meridian), s2 = second_generator(P);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t e = 0; e < nn; ++e) {
            if (j == mer && e % n == 0) continue;
            if (g > 1 && j == s2 && e == (n - 1) * n) continue;
            free.push_back({j, e});
        }
    std::vector<std::vector<Eigen::Index>> col_of(g, std::vector<Eigen::Index>(nn, -1));
    for (std::size_t c = 0; c < free.size(); ++c) col_of[free[c].first][free[c].second] = static_cast<Eigen::Index>(c);

    const Eigen::Index rows = static_cast<Eigen::Index>(P.relators.size() * nn + g);
    const CMat I = CMat::Identity(N, N);
    auto det_error = [&](const FloatRep& r) {
        double e = 0;
        for (const auto& x : r.gens) e = std::max(e, std::abs(x.determinant() - 1.0));
        return e;
    };

    double res = cur.residual();
    if (!(res < tol.newton_start)) throw NumericError("starting residual too large for Newton projection");
    int stalled = 0;
    double prev = res;
    for (;;) {
        tr.residuals.push_back(res);
        if (res < tol.newton && det_error(cur) < tol.det) {
            tr.converged = true;
            break;
        }
        if (tr.iterations >= tol.max_iter) break;
        const auto inv = inverses(cur.gens);
        CMat J = CMat::Zero(rows, static_cast<Eigen::Index>(free.size()));
        Eigen::VectorXcd F(rows);
        for (std::size_t r = 0; r < P.relators.size(); ++r) {
            const auto& L = P.relators[r].letters();
            std::vector<CMat> pre(L.size() + 1, I), suf(L.size() + 1, I);
            for (std::size_t p = 0; p < L.size(); ++p) pre[p + 1] = pre[p] * letter(cur, inv, L[p]);
            for (std::size_t p = L.size(); p-- > 0;) suf[p] = letter(cur, inv, L[p]) * suf[p + 1];
            const CMat W = pre[L.size()] - I;
            const Eigen::Index r0 = static_cast<Eigen::Index>(r * nn);
            for (std::size_t e = 0; e < nn; ++e) F(r0 + static_cast<Eigen::Index>(e)) = W(static_cast<Eigen::Index>(e / n), static_cast<Eigen::Index>(e % n));
            for (std::size_t p = 0; p < L.size(); ++p) {
                const auto j = static_cast<std::size_t>(L[p].gen);
                CMat A = pre[p], B = suf[p + 1];
                if (L[p].exp < 0) {
                    A = -(A * inv[j]);
                    B = inv[j] * B;
                }
                for (std::size_t e = 0; e < nn; ++e) {
                    const Eigen::Index c = col_of[j][e];
                    if (c < 0) continue;
                    const Eigen::Index k = static_cast<Eigen::Index>(e / n), l = static_cast<Eigen::Index>(e % n);
                    J.block(r0, c, static_cast<Eigen::Index>(nn), 1) += (A.col(k) * B.row(l)).reshaped<Eigen::RowMajor>();
                }
            }
        }
        for (std::size_t j = 0; j < g; ++j) {
            const Eigen::Index row = static_cast<Eigen::Index>(P.relators.size() * nn + j);
            const cplx d = cur.gens[j].determinant();
            F(row) = d - 1.0;
            for (std::size_t e = 0; e < nn; ++e) {
                const Eigen::Index c = col_of[j][e];
                if (c >= 0) J(row, c) = d * inv[j](static_cast<Eigen::Index>(e % n), static_cast<Eigen::Index>(e / n));
            }
        }
        Eigen::BDCSVD<CMat> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(1e-12);
        const Eigen::VectorXcd step = svd.solve(-F);
        const auto rank = svd.rank();
        const long expected_kernel = static_cast<long>(nn) - 3;
        if (static_cast<long>(free.size()) - static_cast<long>(rank) > std::max(0L, expected_kernel)) tr.rank_deficient = true;
        for (std::size_t c = 0; c < free.size(); ++c) {
            const auto [j, e] = free[c];
            cur.gens[j](static_cast<Eigen::Index>(e / n), static_cast<Eigen::Index>(e % n)) += step(static_cast<Eigen::Index>(c));
        }
        ++tr.iterations;
        res = cur.residual();
        stalled = res < prev ? 0 : stalled + 1;
        prev = res;
        if (stalled >= tol.diverge_steps || !std::isfinite(res)) {
            tr.residuals.push_back(res);
            throw DivergenceError("Newton projection diverged (residual " + std::to_string(res) + ")");
        }
    }
    return cur;
}

BurnsideResult burnside_serial(const std::vector<CMat>& mats, const Tolerances& tol) { return burnside_impl<false>(mats, tol); }
BurnsideResult burnside_parallel(const std::vector<CMat>& mats, const Tolerances& tol) { return burnside_impl<true>(mats, tol); }

std::size_t burnside_dim(const std::vector<CMat>& mats, const Tolerances& tol) {
    const auto n = mats.empty() ? 0 : mats[0].rows();
    return (n >= 4 ? burnside_parallel(mats, tol) : burnside_serial(mats, tol)).dim;
}

Irreducibility is_irreducible(const FloatRep& rho, const Tolerances& tol) {
    const auto b = burnside_serial(rho.gens, tol);
    if (b.indeterminate) return Irreducibility::indeterminate;
    return b.dim == rho.n * rho.n ? Irreducibility::irreducible : Irreducibility::reducible;
}

const char* to_string(Irreducibility v) {
    switch (v) {
        case Irreducibility::irreducible: return "irreducible";
        case Irreducibility::reducible: return "reducible";
        case Irreducibility::indeterminate: return "indeterminate";
    }
    return "?";
}

bool metabelian_trace_test(const FloatRep& rho, const Tolerances& tol) {
    return std::abs(rho.gens.at(static_cast<std::size_t>(rho.presentation.meridian)).trace()) > tol.trace;
}

bool exact_trace_nonzero(const Representation& sl) {
    if (sl.form != RepForm::sl || !sl.lambda) throw std::invalid_argument("exact trace test expects the SL form");
    const AlgNum tr = trace(sl.gens.at(static_cast<std::size_t>(sl.presentation.meridian)));
    const AlgNum& l = *sl.lambda;
    const AlgNum want = inverse(l) * (pow(l, static_cast<long>(sl.n)) + AlgNum(static_cast<long>(sl.n) - 1));
    if (tr != want) throw ConsistencyError("meridian trace differs from lambda^-1 (lambda^n + n - 1)");
    return !is_zero(tr);
}

FloatRep eigen_gauge(const FloatRep& rho, cplx target, const Tolerances& tol) {
    const std::size_t mer = static_cast<std::size_t>(rho.presentation.meridian);
    const CMat& S = rho.gens.at(mer);
    const Eigen::Index n = S.rows();
    Eigen::ComplexEigenSolver<CMat> right(S), left(S.transpose());
    auto nearest = [&](const Eigen::VectorXcd& ev, cplx z) {
        Eigen::Index k = 0;
        for (Eigen::Index i = 1; i < ev.size(); ++i)
            if (std::abs(ev(i) - z) < std::abs(ev(k) - z)) k = i;
        return k;
    };
    const Eigen::Index k = nearest(right.eigenvalues(), target);
    const cplx mu = right.eigenvalues()(k);
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i)
        if (i != k) gap = std::min(gap, std::abs(right.eigenvalues()(i) - mu));
    if (gap < tol.eigen_gap) throw NumericError("eigenvalue collision; gauge refused");
    Eigen::VectorXcd u = right.eigenvectors().col(k);
    const Eigen::VectorXcd w = left.eigenvectors().col(nearest(left.eigenvalues(), mu));
    Eigen::Index p = 0;
    u.cwiseAbs().maxCoeff(&p);
    u /= u(p);
    // complement ker(w^T), spanned by projected unit vectors other than e_p
    CMat C(n, n);
    C.col(0) = u;
    const cplx wu = (w.transpose() * u)(0);
    if (std::abs(wu) < tol.eigen_gap) throw NumericError("left and right eigenvectors are orthogonal; gauge refused");
    Eigen::Index c = 1;
    for (Eigen::Index e = 0; e < n; ++e) {
        if (e == p) continue;
        Eigen::VectorXcd v = Eigen::VectorXcd::Unit(n, e);
        v -= u * (w(e) / wu);
        C.col(c++) = v;
    }
    const CMat Ci = C.inverse();
    FloatRep out = rho;
    out.provenance = "eigen gauge";
    for (auto& x : out.gens) x = Ci * x * C;
    return out;
}

double commutator_deviation(const FloatRep& rho, std::uint64_t seed, int samples) {
    std::mt19937_64 rng(seed);
    const int g = static_cast<int>(rho.presentation.num_generators());
    const CMat I = CMat::Identity(static_cast<Eigen::Index>(rho.n), static_cast<Eigen::Index>(rho.n));
    double best = 0;
    for (int s = 0; s < samples; ++s) {
        auto rw = [&] {
            Word w;
            while (w.empty()) w = random_word(rng, g, 3);
            return w;
        };
        const Word w = commutator(commutator(rw(), rw()), commutator(rw(), rw()));
        best = std::max(best, inf_norm(rho.image(w) - I));
    }
    return best;
}

namespace {

void classify(DeformReport& rep, const Representation& sl, std::uint64_t seed, const Tolerances& tol) {
    rep.residual = rep.rep.residual();
    const auto b = burnside_serial(rep.rep.gens, tol);
    rep.burnside = b.dim;
    rep.irreducible = b.indeterminate ? Irreducibility::indeterminate
                      : b.dim == sl.n * sl.n ? Irreducibility::irreducible
                                             : Irreducibility::reducible;
    rep.trace_meridian = rep.rep.gens[static_cast<std::size_t>(sl.presentation.meridian)].trace();
    rep.trace_test = metabelian_trace_test(rep.rep, tol);
    rep.commutator = commutator_deviation(rep.rep, seed);
    rep.non_metabelian = rep.commutator > tol.commutator;
}

std::vector<cplx> embed_direction(const std::vector<AlgNum>& direction, const EmbeddingPoint& point) {
    std::vector<cplx> v;
    for (const auto& x : direction) v.push_back(to_complex(x, point));
    return v;
}

}  // namespace

DeformReport deform(const Representation& sl, const std::vector<AlgNum>& direction, double t, std::uint64_t seed,
                    const EmbeddingPoint& point, const Tolerances& tol) {
    DeformReport rep;
    rep.t = t;
    const FloatRep base = embed_float(sl, point, tol);
    FloatRep start = first_order(base, embed_direction(direction, point), t, tol);
    NewtonTrace tr;
    rep.rep = newton_project(start, tol, &tr);
    rep.converged = tr.converged;
    rep.iterations = tr.iterations;
    classify(rep, sl, seed, tol);
    return rep;
}

std::vector<DeformReport> deform_ladder(const Representation& sl, const std::vector<AlgNum>& direction,
                                        const std::vector<double>& ts, std::uint64_t seed, const EmbeddingPoint& point,
                                        const Tolerances& tol) {
    std::vector<DeformReport> out;
    const std::vector<cplx> v = embed_direction(direction, point);
    FloatRep prev = embed_float(sl, point, tol);
    first_order(prev, v, 0.0, tol);  // rejects a non-cocycle direction
    const std::size_t n = sl.n, m = n * n - 1;
    const CMat I = CMat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    double t_prev = 0;
    for (double t : ts) {
        DeformReport rep;
        rep.t = t;
        FloatRep start = prev;
        start.t = t;
        for (std::size_t j = 0; j < start.gens.size(); ++j) {
            const std::vector<cplx> vj(v.begin() + static_cast<long>(j * m), v.begin() + static_cast<long>((j + 1) * m));
            start.gens[j] = (I + (t - t_prev) * sl_matrix(vj, n)) * prev.gens[j];
        }
        try {
            NewtonTrace tr;
            rep.rep = newton_project(start, tol, &tr);
            rep.converged = tr.converged;
            rep.iterations = tr.iterations;
            classify(rep, sl, seed, tol);
        } catch (const NumericError& e) {
            rep.error = e.what();
            rep.rep = start;
            rep.residual = start.residual();
            out.push_back(std::move(rep));
            break;
        }
        prev = rep.rep;
        t_prev = t;
        const bool ok = rep.converged;
        out.push_back(std::move(rep));
        if (!ok) break;
    }
    return out;
}

}  // namespace knotrep
