// Serial vs OpenMP kernels: exact rref, Fox Jacobians in an adjoint module,
// and the Burnside span closure.

#include <benchmark/benchmark.h>

#include <random>

#include "knotrep/deform.hpp"

using namespace knotrep;

namespace {

Matrix<Rational> random_rational(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> d(-9, 9);
    Matrix<Rational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(d(rng), 1 + std::abs(d(rng)));
    return m;
}

void BM_rref_serial(benchmark::State& st) {
    const auto M = random_rational(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(rref_serial(M).pivots.size());
}
void BM_rref_parallel(benchmark::State& st) {
    const auto M = random_rational(static_cast<std::size_t>(st.range(0)), static_cast<std::size_t>(st.range(0)), 1);
    for (auto _ : st) benchmark::DoNotOptimize(rref_parallel(M).pivots.size());
}
BENCHMARK(BM_rref_serial)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rref_parallel)->Arg(24)->Arg(48)->Arg(96)->Unit(benchmark::kMillisecond);

struct AdFixture {
    Presentation P;
    CoeffModule<AlgNum> ad;
};

const AdFixture& ad_8_20() {
    static const AdFixture f = [] {
        auto P = corpus_entry("8_20");
        auto a = FieldTower::adjoin_root(lift(QPoly::from_coeffs({Rational(1), Rational(-1), Rational(1)})))->generator();
        auto u = to_upper_form(build_tilde_rho(solve_cocycle_tower(P, a, 3)));
        auto sl = normalize_sl(u, FieldTower::adjoin_nth_root(a, 3)->generator());
        return AdFixture{P, module_ad(sl, AdKind::gl)};
    }();
    return f;
}

void BM_fox_jacobian_serial(benchmark::State& st) {
    const auto& f = ad_8_20();
    for (auto _ : st) benchmark::DoNotOptimize(fox_jacobian_serial(f.P, f.ad).rows());
}
void BM_fox_jacobian_parallel(benchmark::State& st) {
    const auto& f = ad_8_20();
    for (auto _ : st) benchmark::DoNotOptimize(fox_jacobian_parallel(f.P, f.ad).rows());
}
BENCHMARK(BM_fox_jacobian_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_fox_jacobian_parallel)->Unit(benchmark::kMillisecond);

std::vector<CMat> random_pair(Eigen::Index n) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(n));
    std::normal_distribution<double> N;
    std::vector<CMat> out;
    for (int k = 0; k < 2; ++k) {
        CMat m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(N(rng), N(rng));
        out.push_back(m);
    }
    return out;
}

void BM_burnside_serial(benchmark::State& st) {
    const auto mats = random_pair(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(burnside_serial(mats).dim);
}
void BM_burnside_parallel(benchmark::State& st) {
    const auto mats = random_pair(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(burnside_parallel(mats).dim);
}
BENCHMARK(BM_burnside_serial)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_burnside_parallel)->Arg(3)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
