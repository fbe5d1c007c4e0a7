#pragma once

// Inhomogeneous cochains on a finitely presented group, evaluated on words.
// Coefficients live in a module given by one matrix per generator.

#include <functional>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "knotrep/foxcalc.hpp"
#include "knotrep/matrix.hpp"
#include "knotrep/presentation.hpp"

namespace knotrep {

// Highest cochain degree handled. Degree 3 is only reached as the
// coboundary of a cup product of total degree 2.
inline constexpr int kMaxCochainDegree = 3;

template <class T>
struct ModuleAction {
    std::size_t dim = 1;
    std::vector<Matrix<T>> gens, gens_inv;

    static std::shared_ptr<const ModuleAction> trivial(std::size_t num_generators, std::size_t dim = 1) {
        auto m = std::make_shared<ModuleAction>();
        m->dim = dim;
        m->gens.assign(num_generators, Matrix<T>::identity(dim));
        m->gens_inv = m->gens;
        return m;
    }
    static std::shared_ptr<const ModuleAction> from_matrices(std::vector<Matrix<T>> g) {
        auto m = std::make_shared<ModuleAction>();
        if (g.empty()) throw std::invalid_argument("module needs at least one generator");
        m->dim = g[0].rows();
        for (const auto& a : g) m->gens_inv.push_back(inverse(a));
        m->gens = std::move(g);
        return m;
    }
    // C_alpha: every generator acts by alpha^h.
    static std::shared_ptr<const ModuleAction> scalar(const Presentation& P, const T& alpha) {
        std::vector<Matrix<T>> g;
        for (std::size_t i = 0; i < P.num_generators(); ++i) g.push_back(Matrix<T>(1, 1, pow(alpha, P.h[i])));
        return from_matrices(std::move(g));
    }

    Matrix<T> act(const Word& w) const { return word_image(w, gens, gens_inv, Matrix<T>::identity(dim)); }
};

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t r = 0; r < b.rows(); ++r)
                for (std::size_t s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
    return k;
}

template <class T>
std::vector<T> kron(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x * y);
    return out;
}

template <class T>
class Cochain {
public:
    using Values = std::vector<T>;
    using Fn = std::function<Values(const std::vector<Word>&)>;
    using ModulePtr = std::shared_ptr<const ModuleAction<T>>;

    Cochain(int degree, ModulePtr module, Fn f) : degree_(degree), module_(std::move(module)), f_(std::move(f)) {
        if (degree_ < 0 || degree_ > kMaxCochainDegree) throw std::invalid_argument("cochain degree out of range");
    }

    int degree() const { return degree_; }
    const ModulePtr& module() const { return module_; }

    Values operator()(const std::vector<Word>& args) const {
        if (static_cast<int>(args.size()) != degree_) throw std::invalid_argument("wrong number of cochain arguments");
        return f_(args);
    }

    // Constant 0-cochain.
    static Cochain constant(ModulePtr module, Values x) {
        if (x.size() != module->dim) throw std::invalid_argument("constant has wrong dimension");
        return Cochain(0, std::move(module), [x](const std::vector<Word>&) { return x; });
    }

    // 1-cochain extended from generator values by the cocycle rule
    // z(uv) = z(u) + u.z(v); well defined on the group iff it is a cocycle.
    static Cochain from_generator_values(ModulePtr module, std::vector<Values> values) {
        auto mod = module;
        return Cochain(1, std::move(module), [mod, values](const std::vector<Word>& a) {
            Values acc(mod->dim, T(0));
            Matrix<T> prefix = Matrix<T>::identity(mod->dim);
            for (const auto& x : a[0].letters()) {
                const auto g = static_cast<std::size_t>(x.gen);
                if (x.exp > 0) {
                    const Values d = prefix * values[g];
                    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] + d[i];
                    prefix = prefix * mod->gens[g];
                } else {
                    prefix = prefix * mod->gens_inv[g];
                    const Values d = prefix * values[g];
                    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = acc[i] - d[i];
                }
            }
            return acc;
        });
    }

private:
    int degree_;
    ModulePtr module_;
    Fn f_;
};

template <class T>
Cochain<T> operator+(const Cochain<T>& a, const Cochain<T>& b) {
    if (a.degree() != b.degree() || a.module()->dim != b.module()->dim) throw std::invalid_argument("cochain sum mismatch");
    return Cochain<T>(a.degree(), a.module(), [a, b](const std::vector<Word>& args) {
        auto x = a(args);
        const auto y = b(args);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] + y[i];
        return x;
    });
}

template <class T>
Cochain<T> scaled(const Cochain<T>& a, const T& s) {
    return Cochain<T>(a.degree(), a.module(), [a, s](const std::vector<Word>& args) {
        auto x = a(args);
        for (auto& v : x) v = s * v;
        return x;
    });
}

// (u cup v)(g_1..g_{p+q}) = u(g_1..g_p) (x) (g_1...g_p) . v(g_{p+1}..g_{p+q}),
// with values in the tensor product module (diagonal action).
template <class T>
Cochain<T> cup(const Cochain<T>& u, const Cochain<T>& v) {
    const int p = u.degree(), q = v.degree();
    if (p + q > kMaxCochainDegree) throw std::invalid_argument("cup product degree overflow");
    auto mu = u.module(), mv = v.module();
    if (mu->gens.size() != mv->gens.size()) throw std::invalid_argument("cup product of modules over different groups");
    auto m = std::make_shared<ModuleAction<T>>();
    m->dim = mu->dim * mv->dim;
    for (std::size_t g = 0; g < mu->gens.size(); ++g) {
        m->gens.push_back(kron(mu->gens[g], mv->gens[g]));
        m->gens_inv.push_back(kron(mu->gens_inv[g], mv->gens_inv[g]));
    }
    return Cochain<T>(p + q, m, [u, v, p, mv](const std::vector<Word>& a) {
        std::vector<Word> first(a.begin(), a.begin() + p), rest(a.begin() + p, a.end());
        Word prod;
        for (const auto& w : first) prod = prod * w;
        return kron(u(first), mv->act(prod) * v(rest));
    });
}

template <class T>
Cochain<T> coboundary(const Cochain<T>& f) {
    const int n = f.degree();
    if (n + 1 > kMaxCochainDegree) throw std::invalid_argument("coboundary degree overflow");
    auto m = f.module();
    return Cochain<T>(n + 1, m, [f, n, m](const std::vector<Word>& a) {
        std::vector<Word> tail(a.begin() + 1, a.end());
        auto acc = m->act(a[0]) * f(tail);
        for (int i = 1; i <= n; ++i) {
            std::vector<Word> merged;
            for (int k = 0; k < n + 1; ++k) {
                if (k == i - 1) {
                    merged.push_back(a[static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k + 1)]);
                    ++k;
                } else {
                    merged.push_back(a[static_cast<std::size_t>(k)]);
                }
            }
            const auto y = f(merged);
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = (i % 2) ? T(acc[j] - y[j]) : T(acc[j] + y[j]);
        }
        std::vector<Word> head(a.begin(), a.end() - 1);
        const auto y = f(head);
        for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = ((n + 1) % 2) ? T(acc[j] - y[j]) : T(acc[j] + y[j]);
        return acc;
    });
}

// h_k(gamma) = binomial(h(gamma), k)
Rational h_k(const Presentation& P, const Word& gamma, int k);
Cochain<Rational> h_cochain(const Presentation& P, int k);

// Checks delta h_k + sum_{i=1}^{k-1} h_i cup h_{k-i} = 0 on random word pairs.
bool verify_hk_identity(const Presentation& P, int k, int sample_count, std::uint64_t rng_seed, double mean_length = 12.0);

}  // namespace knotrep
