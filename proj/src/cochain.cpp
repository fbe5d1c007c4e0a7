#include "knotrep/cochain.hpp"

namespace knotrep {

Rational h_k(const Presentation& P, const Word& gamma, int k) { return binomial(P.degree(gamma), k); }

Cochain<Rational> h_cochain(const Presentation& P, int k) {
    auto m = ModuleAction<Rational>::trivial(P.num_generators());
    return Cochain<Rational>(1, m, [P, k](const std::vector<Word>& a) { return std::vector<Rational>{h_k(P, a[0], k)}; });
}

bool verify_hk_identity(const Presentation& P, int k, int sample_count, std::uint64_t rng_seed, double mean_length) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    Cochain<Rational> lhs = coboundary(h_cochain(P, k));
    for (int i = 1; i < k; ++i) lhs = lhs + cup(h_cochain(P, i), h_cochain(P, k - i));
    std::mt19937_64 rng(rng_seed);
    const int g = static_cast<int>(P.num_generators());
    for (int s = 0; s < sample_count; ++s) {
        const Word a = random_word(rng, g, mean_length), b = random_word(rng, g, mean_length);
        if (!is_zero(lhs({a, b})[0])) return false;
    }
    return true;
}

}  // namespace knotrep
