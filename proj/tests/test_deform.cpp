#include "doctest.h"

#include <random>

#include "knotrep/deform.hpp"

using namespace knotrep;

namespace {

QPoly P(const char* s) {
    LaurentPoly l = parse_laurent(s);
    return l.body().shifted(static_cast<std::size_t>(l.low()));
}

AlgNum root_of(const char* p) { return FieldTower::adjoin_root(lift(P(p)))->generator(); }

Representation sl_rep(const char* knot, const char* poly, std::size_t n) {
    auto Pr = corpus_entry(knot);
    const AlgNum alpha = root_of(poly);
    auto u = to_upper_form(build_tilde_rho(solve_cocycle_tower(Pr, alpha, n)));
    auto L = FieldTower::adjoin_nth_root(alpha, static_cast<unsigned>(n));
    return normalize_sl(u, L->generator());
}

struct Setup {
    Representation sl;
    std::vector<AlgNum> v;
    EmbeddingPoint point;
};

Setup setup(const char* knot, const char* poly, std::size_t n) {
    auto sl = sl_rep(knot, poly, n);
    auto ad = module_ad(sl, AdKind::sl);
    auto v = distinguished_cocycle(sl, ad);
    REQUIRE(v);
    return {sl, *v, choose_embedding(sl.lambda->tower())};
}

CMat M2(cplx a, cplx b, cplx c, cplx d) {
    CMat m(2, 2);
    m << a, b, c, d;
    return m;
}

CMat random_cmat(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> N;
    CMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(N(rng), N(rng));
    return m;
}

CMat random_unitary(std::mt19937_64& rng, Eigen::Index n) {
    Eigen::HouseholderQR<CMat> qr(random_cmat(rng, n));
    return qr.householderQ() * CMat::Identity(n, n);
}

std::vector<cplx> embed_v(const Setup& s) {
    std::vector<cplx> v;
    for (const auto& x : s.v) v.push_back(to_complex(x, s.point));
    return v;
}

double max_abs_diff(const CMat& a, const CMat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("tolerance record parsing") {
    auto t = Tolerances::parse("newton=1e-12, max_iter=80");
    CHECK(t.newton == 1e-12);
    CHECK(t.max_iter == 80);
    CHECK(t.burnside == Tolerances{}.burnside);
    CHECK(Tolerances::parse("").embed == Tolerances{}.embed);
    CHECK_THROWS_AS(Tolerances::parse("newtn=1"), std::invalid_argument);
    CHECK_THROWS_AS(Tolerances::parse("newton=abc"), std::invalid_argument);
    CHECK_THROWS_AS(Tolerances::parse("newton=1e-3x"), std::invalid_argument);
    CHECK_THROWS_AS(Tolerances::parse("newton"), std::invalid_argument);
}

TEST_CASE("burnside closure on small examples") {
    const std::vector<CMat> unip = {M2(1, 1, 0, 1), M2(1, 0, 1, 1)};
    CHECK(burnside_serial(unip).dim == 4);
    CHECK(!burnside_serial(unip).indeterminate);
    CHECK(burnside_parallel(unip).dim == 4);
    CHECK(burnside_dim({CMat::Identity(3, 3)}) == 1);
    CHECK(burnside_dim({M2(2, 1, 0, 3), M2(-1, 5, 0, 0.5)}) == 3);
    CHECK(burnside_dim({M2(2, 0, 0, 3)}) == 2);  // diagonal, abelian
    CHECK_THROWS_AS(burnside_dim({}), std::invalid_argument);
}

TEST_CASE("property: burnside dimension") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = 2 + trial % 3;
        std::vector<CMat> mats;
        std::size_t prev = 0;
        for (int k = 0; k < 3; ++k) {
            // sparse-ish generators so the dimension grows in steps
            CMat m = CMat::Zero(n, n);
            for (Eigen::Index i = 0; i < n; ++i) m(i, i) = cplx(1.0 + static_cast<double>(rng() % 3), 0);
            m(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)), static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n))) += 1.0;
            mats.push_back(m);
            const auto d = burnside_serial(mats).dim;
            CHECK(d >= prev);
            CHECK(d <= static_cast<std::size_t>(n * n));
            prev = d;
        }
        CHECK(burnside_parallel(mats).dim == prev);
        const CMat U = random_unitary(rng, n);
        std::vector<CMat> conj;
        for (const auto& m : mats) conj.push_back(U * m * U.adjoint());
        CHECK(burnside_serial(conj).dim == prev);

        // block upper-triangular: the top-left block is invariant
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n - 1));
        std::vector<CMat> red;
        for (int j = 0; j < 3; ++j) {
            CMat m = random_cmat(rng, n);
            m.bottomLeftCorner(n - k, k).setZero();
            red.push_back(m);
        }
        CHECK(burnside_serial(red).dim < static_cast<std::size_t>(n * n));
        std::vector<CMat> generic = {random_cmat(rng, n), random_cmat(rng, n)};
        CHECK(burnside_serial(generic).dim == static_cast<std::size_t>(n * n));
    }
}

TEST_CASE("embedding the exact representation") {
    auto s = setup("3_1", "t^2 - t + 1", 2);
    auto f = embed_float(s.sl, s.point);
    CHECK(f.residual() < 1e-12);
    for (const auto& g : f.gens) CHECK(std::abs(g.determinant() - 1.0) < 1e-12);
    CHECK(is_irreducible(f) == Irreducibility::reducible);

    FloatRep id{s.sl.presentation, 2, {CMat::Identity(2, 2), CMat::Identity(2, 2)}, 0, "identity"};
    CHECK(id.residual() == 0);

    std::mt19937_64 rng(3);
    const CMat U = random_unitary(rng, 2);
    FloatRep c = f;
    for (auto& g : c.gens) g = U * g * U.adjoint();
    CHECK(c.residual() < 1e-12);
}

TEST_CASE("first order step") {
    auto s = setup("3_1", "t^2 - t + 1", 2);
    auto base = embed_float(s.sl, s.point);
    const auto v = embed_v(s);
    auto z = first_order(base, v, 0.0);
    for (std::size_t j = 0; j < base.gens.size(); ++j) CHECK(max_abs_diff(z.gens[j], base.gens[j]) == 0);
    // residual is quadratic in t
    const double r1 = first_order(base, v, 0.01).residual(), r2 = first_order(base, v, 0.005).residual();
    CHECK(r1 > 0);
    CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.02));

    std::vector<cplx> bad(v.size(), cplx(0));
    bad[0] = 1;
    bad[4] = cplx(0, 1);
    CHECK_THROWS_AS(first_order(base, bad, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(first_order(base, std::vector<cplx>(2), 0.01), std::invalid_argument);

    // a coboundary direction is tangent to the conjugation orbit
    const CMat X = M2(cplx(0.3, 0.1), -0.7, cplx(0.2, 0.5), cplx(-0.3, -0.1));
    std::vector<cplx> cob;
    for (const auto& g : base.gens) {
        const CMat d = g * X * g.inverse() - X;
        for (Eigen::Index k = 0; k < 3; ++k) cob.push_back(d(k / 2, k % 2));
    }
    // Newton lands within O(t^2) of the orbit, so the trace drift is quadratic
    auto drift = [&](double t) {
        auto st = first_order(base, cob, t);
        CHECK(st.residual() < t * t * 10);
        NewtonTrace tr;
        auto back = newton_project(st, {}, &tr);
        CHECK(tr.converged);
        return std::abs(back.gens[0].trace() - base.gens[0].trace());
    };
    const double d1 = drift(0.01), d2 = drift(0.001);
    CHECK(d1 < 1e-4);
    CHECK(d1 / d2 > 30);
}

TEST_CASE("newton projection") {
    auto s = setup("3_1", "t^2 - t + 1", 2);
    auto base = embed_float(s.sl, s.point);
    NewtonTrace tr0;
    auto fixed = newton_project(base, {}, &tr0);
    CHECK(tr0.converged);
    CHECK(tr0.iterations == 0);
    for (std::size_t j = 0; j < base.gens.size(); ++j) CHECK(max_abs_diff(fixed.gens[j], base.gens[j]) == 0);

    const auto v = embed_v(s);
    for (double t : {0.01, 0.03, 0.05}) {
        CAPTURE(t);
        auto st = first_order(base, v, t);
        NewtonTrace tr;
        auto r = newton_project(st, {}, &tr);
        CHECK(tr.converged);
        CHECK(tr.iterations <= 15);
        CHECK(!tr.rank_deficient);
        CHECK(r.residual() < 1e-10);
        for (const auto& g : r.gens) CHECK(std::abs(g.determinant() - 1.0) < 1e-10);
        // gauge entries untouched
        const auto mer = static_cast<std::size_t>(r.presentation.meridian);
        CHECK(max_abs_diff(r.gens[mer].col(0), st.gens[mer].col(0)) == 0);
        CHECK(r.gens[1 - mer](1, 0) == st.gens[1 - mer](1, 0));
        // quadratic convergence while above the rounding floor
        for (std::size_t k = 0; k + 1 < tr.residuals.size(); ++k)
            if (tr.residuals[k + 1] > 1e-13) CHECK(tr.residuals[k + 1] / (tr.residuals[k] * tr.residuals[k]) < 10);
    }
    CHECK_THROWS_AS(newton_project(first_order(base, v, 0.5)), NumericError);

    // a start that cannot improve: the relator of a random pair
    std::mt19937_64 rng(5);
    FloatRep junk = base;
    for (auto& g : junk.gens) g += 1e-2 * random_cmat(rng, 2);
    Tolerances strict;
    strict.max_iter = 2;
    NewtonTrace trj;
    try {
        newton_project(junk, strict, &trj);
    } catch (const NumericError&) {
    }
    CHECK(trj.iterations <= 2);
}

TEST_CASE("trefoil deformation pipeline") {
    auto s = setup("3_1", "t^2 - t + 1", 2);
    auto r = deform(s.sl, s.v, 0.01, 7, s.point);
    CHECK(r.converged);
    CHECK(r.iterations <= 15);
    CHECK(r.residual < 1e-10);
    CHECK(r.burnside == 4);
    CHECK(r.irreducible == Irreducibility::irreducible);
    CHECK(std::abs(r.trace_meridian) > 1e-3);
    CHECK(r.trace_test);
    CHECK(r.commutator > 1e-6);
    CHECK(r.non_metabelian);

    auto z = deform(s.sl, s.v, 0.0, 7, s.point);
    CHECK(z.converged);
    CHECK(z.burnside < 4);
    CHECK(z.irreducible == Irreducibility::reducible);
    CHECK(z.commutator < 1e-10);
    CHECK(z.trace_test);

    // determinism
    auto again = deform(s.sl, s.v, 0.01, 7, s.point);
    CHECK(again.commutator == r.commutator);
    CHECK(commutator_deviation(r.rep, 7) == commutator_deviation(r.rep, 7));
}

TEST_CASE("deformation ladder") {
    auto s = setup("3_1", "t^2 - t + 1", 2);
    auto rungs = deform_ladder(s.sl, s.v, kDefaultLadder, 7, s.point);
    REQUIRE(rungs.size() == 3);
    for (const auto& r : rungs) {
        CHECK(r.error.empty());
        CHECK(r.converged);
        CHECK(r.burnside == 4);
    }
    CHECK(rungs[2].t == 0.05);

    auto s8 = setup("8_20", "t^2 - t + 1", 3);
    auto r8 = deform_ladder(s8.sl, s8.v, kDefaultLadder, 7, s8.point);
    REQUIRE(r8.size() >= 2);
    CHECK(r8[0].burnside == 9);
    CHECK(r8[1].burnside == 9);
    // the last rung either converges or records why it stopped
    CHECK((r8.back().converged || !r8.back().error.empty()));
}

TEST_CASE("trace test") {
    auto s = setup("3_1", "t^2 - t + 1", 2);
    CHECK(exact_trace_nonzero(s.sl));
    CHECK(metabelian_trace_test(embed_float(s.sl, s.point)));
    FloatRep traceless{s.sl.presentation, 2, {M2(0, 1, -1, 0), M2(0, cplx(0, 1), cplx(0, 1), 0)}, 0, "synthetic"};
    CHECK(!metabelian_trace_test(traceless));
    auto s8 = setup("8_20", "t^2 - t + 1", 3);
    CHECK(exact_trace_nonzero(s8.sl));
    auto u = to_upper_form(build_tilde_rho(solve_cocycle_tower(corpus_entry("3_1"), root_of("t^2 - t + 1"), 2)));
    CHECK_THROWS_AS(exact_trace_nonzero(u), std::invalid_argument);
}

TEST_CASE("eigenvector gauge") {
    for (auto [k, p, n] : {std::tuple{"3_1", "t^2 - t + 1", 2}, std::tuple{"8_20", "t^2 - t + 1", 3}}) {
        CAPTURE(k);
        const auto N = static_cast<std::size_t>(n);
        auto s = setup(k, p, N);
        const cplx target = to_complex(pow(*s.sl.lambda, static_cast<long>(N) - 1), s.point);
        auto base = embed_float(s.sl, s.point);
        auto g = eigen_gauge(base, target);
        for (std::size_t j = 0; j < base.gens.size(); ++j) CHECK(max_abs_diff(g.gens[j], base.gens[j]) < 1e-12);

        auto r = deform(s.sl, s.v, 0.01, 7, s.point);
        auto gr = eigen_gauge(r.rep, target);
        const auto mer = static_cast<std::size_t>(s.sl.presentation.meridian);
        const CMat& S = gr.gens[mer];
        for (Eigen::Index i = 1; i < n; ++i) {
            CHECK(std::abs(S(0, i)) < 1e-10);
            CHECK(std::abs(S(i, 0)) < 1e-10);
        }
        CHECK(std::abs(S(0, 0) - target) < 0.1);
        CHECK(gr.residual() < 1e-9);
    }
    auto s = setup("3_1", "t^2 - t + 1", 2);
    FloatRep flat{s.sl.presentation, 2, {CMat::Identity(2, 2), CMat::Identity(2, 2)}, 0, "identity"};
    CHECK_THROWS_AS(eigen_gauge(flat, 1.0), NumericError);
}

TEST_CASE("8_20 deforms to an irreducible SL(3) representation") {
    auto s = setup("8_20", "t^2 - t + 1", 3);
    auto r = deform(s.sl, s.v, 0.01, 7, s.point);
    CHECK(r.converged);
    CHECK(r.residual < 1e-10);
    CHECK(r.burnside == 9);
    CHECK(r.irreducible == Irreducibility::irreducible);
    CHECK(r.trace_test);
    CHECK(r.non_metabelian);
    CHECK(burnside_parallel(r.rep.gens).dim == 9);
    auto z = deform(s.sl, s.v, 0.0, 7, s.point);
    CHECK(z.burnside < 9);
}
