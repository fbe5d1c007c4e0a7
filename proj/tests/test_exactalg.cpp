#include "doctest.h"

#include <random>

#include "knotrep/snf.hpp"
#include "knotrep/tower.hpp"
#include "oracles.hpp"

using namespace knotrep;

namespace {

QPoly P(const char* s) {
    LaurentPoly l = parse_laurent(s);
    return l.body().shifted(static_cast<std::size_t>(l.low()));
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(make_rational(6, -4) == Rational(-3, 2));
    CHECK(binomial(-1, 2) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(-2, 3) == -4);
    CHECK(binomial(3, 5) == 0);
    CHECK_THROWS_AS(inverse(Rational(0)), std::domain_error);
}

TEST_CASE("polynomial gcd examples") {
    CHECK(gcd(P("t^2 - 1"), P("t - 1")) == P("t - 1"));
    CHECK(gcd(P("2*t^2 - 4"), QPoly()) == P("t^2 - 2"));
    CHECK(gcd(P("t^2 - t + 1"), P("t^2 - 3*t + 1")) == QPoly(1L));
    CHECK(gcd(QPoly(), QPoly()).is_zero());
}

TEST_CASE("xgcd identity and squarefree decomposition") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        QPoly a = gen::random_qpoly(rng, 5), b = gen::random_qpoly(rng, 5);
        if (a.is_zero() && b.is_zero()) continue;
        auto X = xgcd(a, b);
        CHECK(X.s * a + X.t * b == X.g);
        CHECK(X.g == gcd(a, b));
    }
    QPoly f = pow(P("t - 1"), 3) * pow(P("t^2 + 1"), 2) * P("t + 2");
    auto sf = squarefree_decomposition(f);
    REQUIRE(sf.size() == 3);
    CHECK(sf[0] == P("t + 2"));
    CHECK(sf[1] == P("t^2 + 1"));
    CHECK(sf[2] == P("t - 1"));
    CHECK(valuation(f, P("t - 1")) == 3);
    CHECK(!is_squarefree(f));
    CHECK(is_squarefree(P("t^2 - t + 1")));
}

TEST_CASE("laurent polynomials") {
    LaurentPoly p = parse_laurent("t^-1 - 1 + t");
    CHECK(p.low() == -1);
    CHECK(p.high() == 1);
    CHECK(p.reciprocal() == p);
    CHECK(canonical_form(p) == P("t^2 - t + 1"));
    CHECK(canonical_form(parse_laurent("-3/2*t^3 + 9/2*t^2 - 3/2*t")) == P("t^2 - 3*t + 1"));
    CHECK(canonical_form(P("4*t^2 - 7*t + 4")).str() == "4*t^2 - 7*t + 4");
    CHECK(parse_laurent("2*t^2 - 3*t + 2").str() == "2*t^2 - 3*t + 2");
    CHECK(parse_laurent("t^(-2) + 1/2").str() == "1/2 + t^-2");
    CHECK_THROWS_AS(parse_laurent("t +"), std::invalid_argument);
    CHECK_THROWS_AS(parse_laurent("3 4"), std::invalid_argument);
    CHECK(parse_laurent("1").eval(Rational(7)) == 1);
    CHECK(parse_laurent("t^-1").eval(Rational(2)) == Rational(1, 2));
}

TEST_CASE("adjoin_root gives the defining relation") {
    auto F = FieldTower::adjoin_root(lift(P("t^2 - t + 1")));
    AlgNum a = F->generator();
    CHECK(F->degree() == 2);
    CHECK(a * a == a - AlgNum(1));
    CHECK(a * inverse(a) == AlgNum(1));
    CHECK(pow(a, 6) == AlgNum(1));
    CHECK(pow(a, -1) == AlgNum(1) - a);
}

TEST_CASE("adjoin_nth_root") {
    auto F = FieldTower::adjoin_root(lift(P("t^2 - t + 1")));
    AlgNum a = F->generator();
    auto L = FieldTower::adjoin_nth_root(a, 2);
    AlgNum l = L->generator();
    CHECK(L->depth() == 2);
    CHECK(l * l == a);
    CHECK(pow(l, 4) == l * l - AlgNum(1));
    // lower-level elements mix freely with the top level
    CHECK(pow(l, 12) == AlgNum(1));
    CHECK(inverse(l) * l == AlgNum(1));

    auto T = FieldTower::adjoin_nth_root(AlgNum(1), 1);
    CHECK(T->generator() == AlgNum(1));
    CHECK(T->generator().is_rational());

    CHECK_THROWS_AS(FieldTower::adjoin_nth_root(AlgNum(0), 2), std::invalid_argument);
    CHECK_THROWS_AS(FieldTower::adjoin_root(lift(P("t^2 - 2*t + 1"))), std::invalid_argument);
}

TEST_CASE("zero divisors raise a split event") {
    auto F = FieldTower::adjoin_root(lift(P("t^2 - 1")));
    AlgNum x = F->generator();
    CHECK(!is_zero(x - AlgNum(1)));
    try {
        (void)inverse(x - AlgNum(1));
        FAIL("expected split");
    } catch (const SplitEvent& ev) {
        CHECK(ev.tower == F);
        CHECK(ev.factor * ev.cofactor == F->modulus());
        CHECK(ev.factor.degree() == 1);
    }
    std::function<int(const TowerPtr&)> count = [](const TowerPtr& T) {
        AlgNum y = T->level(1)->generator();
        AlgNum d = y - AlgNum(1);
        return is_zero(d) ? 0 : static_cast<int>(is_zero(inverse(d) * d - AlgNum(1)));
    };
    auto br = on_branches<int>(F, count);
    REQUIRE(br.size() == 2);
    CHECK(br[0].value == 0);  // x = 1
    CHECK(br[1].value == 1);  // x = -1
}

TEST_CASE("split rebuilds levels above and projects elements") {
    auto F = FieldTower::adjoin_root(lift(P("t^2 - 1")));
    AlgNum x = F->generator();
    auto L = FieldTower::adjoin_nth_root(x + AlgNum(3), 2);
    AlgNum l = L->generator();
    AlgNum e = l * x + AlgNum(2);
    try {
        (void)inverse(x + AlgNum(1));
        FAIL("expected split");
    } catch (const SplitEvent& ev) {
        auto parts = FieldTower::split(L, ev);
        REQUIRE(parts.size() == 2);
        for (const auto& T : parts) {
            AlgNum xl = x.project(T), ll = l.project(T);
            CHECK(ll * ll == xl + AlgNum(3));
            CHECK(e.project(T) == ll * xl + AlgNum(2));
            CHECK(xl.is_rational());
        }
        CHECK(x.project(parts[0]) == AlgNum(-1));
        CHECK(x.project(parts[1]) == AlgNum(1));
    }
}

TEST_CASE("property: (a*b)*inverse(a) == b on every branch") {
    // (x^2 - 2)(x^2 + 1)(x - 3): squarefree and reducible, so random elements hit zero divisors
    auto F = FieldTower::adjoin_root(lift(P("t^2 - 2") * P("t^2 + 1") * P("t - 3")), nullptr, "x");
    auto L = FieldTower::adjoin_nth_root(F->generator() + AlgNum(5), 2, "y");
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> d(-4, 4);
    int checked = 0, splits = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<int> ca(10), cb(10);
        for (auto& v : ca) v = d(rng);
        for (auto& v : cb) v = d(rng);
        auto build = [](const TowerPtr& T, const std::vector<int>& c) {
            AlgNum x = T->level(1)->generator(), y = T->generator();
            AlgNum s(0), xp(1);
            for (int i = 0; i < 5; ++i) {
                s = s + AlgNum(c[static_cast<std::size_t>(i)]) * xp + AlgNum(c[static_cast<std::size_t>(5 + i)]) * xp * y;
                xp = xp * x;
            }
            return s;
        };
        std::function<int(const TowerPtr&)> fn = [&](const TowerPtr& T) {
            AlgNum a = build(T, ca), b = build(T, cb);
            if (is_zero(a)) return 0;
            return (a * b) * inverse(a) == b ? 1 : -1000;
        };
        auto br = on_branches<int>(L, fn);
        splits += static_cast<int>(br.size()) - 1;
        for (const auto& b : br) {
            CHECK(b.value >= 0);
            checked += b.value;
        }
    }
    CHECK(checked >= 1000);
    CHECK(splits > 0);
}

TEST_CASE("complex embedding of a tower") {
    auto F = FieldTower::adjoin_root(lift(P("t^2 - t + 1")));
    auto roots = level_roots(F, {});
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].imag() < 0);
    CHECK(std::abs(roots[0] - std::polar(1.0, -std::numbers::pi / 3)) < 1e-14);
    auto L = FieldTower::adjoin_nth_root(F->generator(), 2);
    auto lr = level_roots(L, {roots[0]});
    REQUIRE(lr.size() == 2);
    for (auto z : lr) {
        CHECK(std::abs(z * z - roots[0]) < 1e-14);
        CHECK(embedding_defect(L, {roots[0], z}) < 1e-14);
    }
    AlgNum l = L->generator();
    CHECK(std::abs(to_complex(pow(l, 3) + AlgNum(2), {roots[0], lr[1]}) - (std::pow(lr[1], 3) + 2.0)) < 1e-13);
}

TEST_CASE("exact matrices: rank, kernel, solve") {
    using M = Matrix<Rational>;
    CHECK(rank(M::identity(3)) == 3);
    auto K = kernel_basis(M::from_rows({{1, 1}}));
    REQUIRE(K.size() == 1);
    CHECK(K[0][0] == -K[0][1]);
    CHECK(K[0][0] != 0);

    M A = M::from_rows({{1, 2}, {2, 4}});
    CHECK(!solve_linear(A, {Rational(1), Rational(1)}));
    auto s = solve_linear(A, {Rational(1), Rational(2)});
    REQUIRE(s);
    CHECK(A * s->particular == std::vector<Rational>{1, 2});
    CHECK(s->kernel.size() == 1);

    M B = M::from_rows({{2, 1, 0}, {1, 3, 1}, {0, 1, 4}});
    CHECK(det(B) == 18);
    CHECK(B * inverse(B) == M::identity(3));
    CHECK_THROWS_AS(inverse(A), std::domain_error);
}

TEST_CASE("rref_parallel agrees with rref_serial") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t r = 5 + static_cast<std::size_t>(trial % 7), c = 4 + static_cast<std::size_t>(trial % 5);
        Matrix<Rational> m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m(i, j) = (trial % 3 == 0 && j == 1) ? Rational(0) : Rational(d(rng));
        auto a = rref_serial(m), b = rref_parallel(m);
        CHECK(a.R == b.R);
        CHECK(a.pivots == b.pivots);
    }
}

TEST_CASE("smith normal form examples") {
    using PM = Matrix<QPoly>;
    PM a = PM::from_rows({{P("t - 1"), QPoly()}, {QPoly(), pow(P("t - 1"), 2)}});
    auto s = smith_normal_form(a);
    REQUIRE(s.divisors.size() == 2);
    CHECK(s.divisors[0] == P("t - 1"));
    CHECK(s.divisors[1] == pow(P("t - 1"), 2));

    PM b = PM::from_rows({{P("t"), QPoly(1L)}, {QPoly(), P("t")}});
    auto ob = oracle::invariant_factors(b);
    REQUIRE(ob.size() == 2);
    CHECK(ob[0] == QPoly(1L));
    CHECK(ob[1] == P("t^2"));
    auto sb = smith_normal_form(b);
    CHECK(sb.divisors == ob);

    // Laurent input with negative powers
    Matrix<LaurentPoly> c = Matrix<LaurentPoly>::from_rows({{parse_laurent("t^-1 - 1 + t"), parse_laurent("-1 + t - t^2")}});
    auto sc = smith_normal_form(c);
    REQUIRE(sc.snf.divisors.size() == 1);
    CHECK(sc.snf.divisors[0] == P("t^2 - t + 1"));
    CHECK(sc.row_shift[0] == 1);
}

TEST_CASE("property: smith normal form on random 4x4 matrices") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1000; ++trial) {
        auto M = gen::random_poly_matrix(rng, 4, 4, 3);
        if (trial % 4 == 1) {
            // force rank deficiency
            for (std::size_t j = 0; j < 4; ++j) M(3, j) = M(0, j) * P("t + 1") - M(1, j);
        }
        auto s = smith_normal_form(M);
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) CHECK(divides(s.divisors[i], s.divisors[i + 1]));
        for (const auto& d : s.divisors) CHECK(d.lead() == 1);
        CHECK(s.U * M * s.V == s.D);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i != j) CHECK(s.D(i, j).is_zero());
        CHECK(oracle::determinantal_divisor(s.U, 4).degree() == 0);
        CHECK(oracle::determinantal_divisor(s.V, 4).degree() == 0);
        QPoly prod(1L);
        for (const auto& d : s.divisors) prod *= d;
        if (s.zero_count == 0) CHECK(prod == oracle::determinantal_divisor(M, 4));
        else CHECK(oracle::determinantal_divisor(M, 4).is_zero());
    }
}
