#include "doctest.h"

#include "knotrep/cohomology.hpp"
#include "knotrep/snf.hpp"

using namespace knotrep;

namespace {

QPoly P(const char* s) {
    LaurentPoly l = parse_laurent(s);
    return l.body().shifted(static_cast<std::size_t>(l.low()));
}

AlgNum root_of(const char* p) { return FieldTower::adjoin_root(lift(P(p)))->generator(); }

struct Dims {
    std::size_t h0, h1, h2;
};

void check_dims(const CohomologyReport& r, Dims d) {
    CHECK(r.h0 == d.h0);
    CHECK(r.h1 == d.h1);
    CHECK(r.h2 == d.h2);
    CHECK(r.euler_ok);
}

struct Reps {
    Representation upper, sl;
};

Reps reps(const char* knot, const char* poly, std::size_t n) {
    auto Pr = corpus_entry(knot);
    const AlgNum alpha = root_of(poly);
    auto u = to_upper_form(build_tilde_rho(solve_cocycle_tower(Pr, alpha, n)));
    auto L = FieldTower::adjoin_nth_root(alpha, static_cast<unsigned>(n));
    return {u, normalize_sl(u, L->generator())};
}

// invariant factors of t I - A over the field of A's entries
std::vector<AlgPoly> char_invariants(const Matrix<AlgNum>& A) {
    const std::size_t m = A.rows();
    Matrix<AlgPoly> M(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) M(i, j) = AlgPoly(-A(i, j)) + (i == j ? AlgPoly::monomial(AlgNum(1), 1) : AlgPoly());
    return smith_normal_form(M).divisors;
}

}  // namespace

TEST_CASE("trivial and C_alpha coefficients on the trefoil") {
    auto T = corpus_entry("3_1");
    check_dims(cohomology_dims(T, module_trivial(T)), {1, 1, 0});
    const AlgNum a = root_of("t^2 - t + 1");
    check_dims(cohomology_dims(T, module_cyclic(T, a, 1)), {0, 1, 1});
    check_dims(cohomology_dims(T, module_cyclic(T, inverse(a), 1)), {0, 1, 1});
    // not a root: acyclic
    check_dims(cohomology_dims(T, module_cyclic(T, AlgNum(2), 1)), {0, 0, 0});
    check_dims(cohomology_dims(T, module_cyclic(T, AlgNum(1), 3)), {1, 1, 0});
    auto U = corpus_entry("unknot");
    check_dims(cohomology_dims(U, module_trivial(U)), {1, 1, 0});
    auto zb = cocycle_basis(T, module_trivial(T));
    REQUIRE(zb.z1.size() == 1);
    CHECK(zb.z1[0][0] == zb.z1[0][1]);  // a multiple of h
    CHECK(zb.h1_reps.size() == 1);
}

TEST_CASE("cyclic modules realize t I - alpha J_k") {
    auto T = corpus_entry("3_1");
    const AlgNum a = root_of("t^2 - t + 1");
    for (std::size_t k = 1; k <= 4; ++k) {
        auto M = module_cyclic(T, a, k);
        CHECK(action_is_valid(T, M));
        auto inv = char_invariants(M.gens[0]);
        CHECK(inv.back() == pow(AlgPoly::monomial(AlgNum(1), 1) - AlgPoly(a), static_cast<unsigned>(k)));
    }
}

TEST_CASE("property: cyclic coefficient dimensions follow the torsion exponents") {
    for (const auto& name : corpus_names()) {
        CAPTURE(name);
        auto Pr = corpus_entry(name);
        check_dims(cohomology_dims(Pr, module_cyclic(Pr, AlgNum(1), 1)), {1, 1, 0});
        auto TD = torsion_decomposition(Pr);
        for (const auto& f : TD.factors) {
            auto T = FieldTower::adjoin_root(lift(f.p));
            auto res = on_branches<int>(T, [&](const TowerPtr& t) {
                const AlgNum a = t->generator();
                // exponents of the branch's own minimal polynomial
                QPoly mp = a.is_rational() ? QPoly::from_coeffs({-a.rational(), Rational(1)}) : f.p;
                if (!a.is_rational() && t->degree() != f.p.degree()) {
                    std::vector<Rational> c;
                    for (const auto& x : t->modulus().coeffs()) c.push_back(x.rational());
                    mp = QPoly::from_coeffs(c);
                }
                for (std::size_t k = 1; k <= 3; ++k) {
                    std::size_t want = 0;
                    for (const auto& d : TD.divisors) want += std::min<std::size_t>(k, valuation(d, mp));
                    check_dims(cohomology_dims(Pr, module_cyclic(Pr, a, k)), {0, want, want});
                }
                return 0;
            });
            CHECK(!res.empty());
        }
    }
}

TEST_CASE("adjoint modules of the trefoil at n = 2") {
    auto r = reps("3_1", "t^2 - t + 1", 2);
    const auto& Pr = r.sl.presentation;
    auto sl = module_ad(r.sl, AdKind::sl);
    auto gl = module_ad(r.sl, AdKind::gl);
    CHECK(sl.dim == 3);
    CHECK(gl.dim == 4);
    CHECK(action_is_valid(Pr, sl));
    // identity line fixed
    for (const auto& A : gl.gens) {
        std::vector<AlgNum> I{AlgNum(1), AlgNum(0), AlgNum(0), AlgNum(1)};
        CHECK(A * I == I);
    }
    auto rs = cohomology_dims(Pr, sl);
    check_dims(rs, {0, 1, 1});
    CHECK(rs.z1 == 4);
    check_dims(cohomology_dims(Pr, gl), {1, 2, 1});
    // scaling by lambda^-h does not change Ad
    auto glu = module_ad(r.upper, AdKind::gl);
    CHECK(glu.gens == gl.gens);
    // Ad of a scalar representation is trivial
    Representation scal = r.sl;
    for (auto& g : scal.gens) g = Matrix<AlgNum>::identity(2).scaled(AlgNum(3));
    for (auto& g : scal.gens_inv) g = Matrix<AlgNum>::identity(2).scaled(inverse(AlgNum(3)));
    for (const auto& A : module_ad(scal, AdKind::gl).gens) CHECK(A.is_identity());
}

TEST_CASE("filtration and the quotient M") {
    for (auto [knot, n] : {std::pair{"3_1", std::size_t{2}}, {"8_20", std::size_t{3}}}) {
        CAPTURE(knot);
        auto r = reps(knot, "t^2 - t + 1", n);
        const auto& Pr = r.upper.presentation;
        for (std::size_t i = 0; i + 2 <= n; ++i) check_dims(cohomology_dims(Pr, filtration_C(r.upper, i)), {0, 0, 0});
        auto full = filtration_C(r.upper, n - 1);
        CHECK(full.dim == n * n);
        // gl = sl + C
        check_dims(cohomology_dims(Pr, full), {1, n, n - 1});
        auto M = quotient_M(r.upper);
        CHECK(M.dim == n - 1);
        check_dims(cohomology_dims(Pr, M), {0, n - 1, n - 1});
        // same for the SL normalization
        check_dims(cohomology_dims(Pr, quotient_M(r.sl)), {0, n - 1, n - 1});
        // C(0) / <E_1^n> is unipotent, isomorphic to C[t]/(t-1)^(n-1)
        auto C0 = filtration_C(r.upper, 0);
        Matrix<AlgNum> line(n, 1);
        line(0, 0) = AlgNum(1);  // E_1^n is the first basis vector of C(0)
        auto Q = quotient(C0, line).module;
        const auto mer = static_cast<std::size_t>(Pr.meridian);
        auto inv = char_invariants(Q.gens[mer]);
        CHECK(inv.back() == pow(AlgPoly::monomial(AlgNum(1), 1) - AlgPoly(AlgNum(1)), static_cast<unsigned>(n - 1)));
    }
    auto r = reps("3_1", "t^2 - t + 1", 2);
    auto C0 = filtration_C(r.upper, 0);
    REQUIRE(C0.ambient);
    // span{E_1^2, E_2^2}
    CHECK((*C0.ambient)(1, 0) == AlgNum(1));
    CHECK((*C0.ambient)(3, 1) == AlgNum(1));
    // a non-invariant span is rejected
    Matrix<AlgNum> bad(4, 1);
    bad(2, 0) = AlgNum(1);  // E_2^1
    CHECK_THROWS_AS(submodule(module_ad(r.upper, AdKind::gl), bad), ConsistencyError);
}

TEST_CASE("sl(3) at 8_20") {
    auto r = reps("8_20", "t^2 - t + 1", 3);
    const auto& Pr = r.sl.presentation;
    auto sl = module_ad(r.sl, AdKind::sl);
    auto rep = cohomology_dims(Pr, sl);
    check_dims(rep, {0, 2, 2});
    CHECK(rep.z1 == 10);
    CHECK(fox_jacobian_serial(Pr, sl) == fox_jacobian_parallel(Pr, sl));
}

TEST_CASE("cocycle bases and the distinguished vector") {
    for (auto [knot, n] : {std::pair{"3_1", std::size_t{2}}, {"8_20", std::size_t{3}}}) {
        CAPTURE(knot);
        auto r = reps(knot, "t^2 - t + 1", n);
        const auto& Pr = r.sl.presentation;
        auto sl = module_ad(r.sl, AdKind::sl);
        auto B = cocycle_basis(Pr, sl);
        CHECK(B.z1.size() == n * n + n - 2);
        CHECK(B.h1_reps.size() == n - 1);
        auto v = distinguished_cocycle(r.sl, sl);
        REQUIRE(v);
        CHECK((fox_jacobian(Pr, sl) * *v) == std::vector<AlgNum>(Pr.relators.size() * sl.dim, AlgNum(0)));
        const auto mer = static_cast<std::size_t>(Pr.meridian);
        const std::size_t f = (n - 1) * n;  // (n,1) in gl and sl coordinates
        CHECK(is_zero((*v)[mer * sl.dim + f]));
        bool some = false;
        for (std::size_t j = 0; j < Pr.num_generators(); ++j) some |= !is_zero((*v)[j * sl.dim + f]);
        CHECK(some);
    }
}

TEST_CASE("float path agrees with the exact ranks") {
    auto r = reps("3_1", "t^2 - t + 1", 2);
    const auto& Pr = r.sl.presentation;
    auto sl = module_ad(r.sl, AdKind::sl);
    const auto lam_tower = r.sl.lambda->tower();
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
            auto point = choose_embedding(lam_tower, {a, b});
            auto fl = to_complex(sl, point);
            auto rf = cohomology_dims(Pr, fl);
            CHECK(!rf.exact);
            check_dims(rf, {0, 1, 1});
            std::vector<Matrix<cplx>> g;
            for (const auto& x : r.sl.gens) g.push_back(to_complex(x, point));
            CHECK(cohomology_dims(Pr, module_ad(g, AdKind::sl)).h1 == 1);
            CHECK(rank_margin(fox_jacobian(Pr, fl), 1e-8) > 10);
        }
}
