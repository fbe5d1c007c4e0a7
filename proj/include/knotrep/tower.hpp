#pragma once

// Algebraic numbers in a tower Q[x1]/(m1)[x2]/(m2)... with dynamic
// evaluation. Moduli are monic and squarefree but may be reducible; an
// inversion that hits a zero divisor throws SplitEvent carrying the
// factorization it found, and the caller re-runs on each factor.

#include <complex>
#include <deque>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotrep/poly.hpp"

namespace knotrep {

class FieldTower;
using TowerPtr = std::shared_ptr<const FieldTower>;

class AlgNum {
public:
    AlgNum() = default;
    AlgNum(int c) : q_(c) {}
    AlgNum(long c) : q_(c) {}
    AlgNum(Rational q) : q_(std::move(q)) {}

    // Element of T given by a residue polynomial over T's parent.
    static AlgNum from_rep(const TowerPtr& T, std::vector<AlgNum> coeffs);

    const TowerPtr& tower() const { return tower_; }
    int depth() const;
    bool is_rational() const { return !tower_; }
    const Rational& rational() const;
    // Residue coefficients over the parent of tower(); empty for rationals.
    const std::vector<AlgNum>& rep() const { return rep_; }

    // Image in the corresponding level of another chain produced by split().
    AlgNum project(const TowerPtr& target) const;

    AlgNum operator-() const;
    friend AlgNum operator+(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator-(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator*(const AlgNum& a, const AlgNum& b);
    friend AlgNum operator/(const AlgNum& a, const AlgNum& b);
    AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
    AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
    AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }
    AlgNum& operator/=(const AlgNum& o) { return *this = *this / o; }

    friend bool operator==(const AlgNum& a, const AlgNum& b);
    friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

    friend bool is_zero(const AlgNum& a) { return !a.tower_ && sgn(a.q_) == 0; }
    friend AlgNum inverse(const AlgNum& a);
    friend std::string to_string(const AlgNum& a);

private:
    std::vector<AlgNum> coeffs_over(const TowerPtr& T) const;

    TowerPtr tower_;
    Rational q_;
    std::vector<AlgNum> rep_;
};

AlgNum pow(const AlgNum& a, long e);

inline bool poly_coeff_is_negative(const AlgNum& c) { return c.is_rational() && sgn(c.rational()) < 0; }
inline bool poly_coeff_is_simple(const AlgNum& c) {
    if (c.is_rational()) return true;
    const std::string s = to_string(c);
    return s.find_first_of("+- ", 1) == std::string::npos;
}

using AlgPoly = Poly<AlgNum>;

inline AlgPoly lift(const Poly<Rational>& p) {
    std::vector<AlgNum> c;
    for (const auto& x : p.coeffs()) c.emplace_back(x);
    return AlgPoly::from_coeffs(c);
}

struct SplitEvent {
    TowerPtr tower;     // level whose modulus factors
    AlgPoly factor;     // monic, 0 < deg < deg modulus
    AlgPoly cofactor;   // modulus / factor
};

class FieldTower : public std::enable_shared_from_this<FieldTower> {
public:
    // Q[x]/(m) or parent[x]/(m). m is made monic; a repeated factor is rejected.
    static TowerPtr adjoin_root(const AlgPoly& m, const TowerPtr& parent = nullptr, std::string symbol = "a");
    // parent of alpha extended by a root of x^n - alpha.
    static TowerPtr adjoin_nth_root(const AlgNum& alpha, unsigned n, std::string symbol = "l");

    // One new top tower per branch (factor first, then cofactor); levels
    // above the split are rebuilt with projected moduli.
    static std::vector<TowerPtr> split(const TowerPtr& top, const SplitEvent& ev);

    const TowerPtr& parent() const { return parent_; }
    const AlgPoly& modulus() const { return modulus_; }
    const std::string& symbol() const { return symbol_; }
    int depth() const { return depth_; }
    int degree() const { return modulus_.degree(); }
    TowerPtr level(int d) const;
    AlgNum generator() const;

private:
    FieldTower(TowerPtr parent, AlgPoly modulus, std::string symbol);
    static TowerPtr make(TowerPtr parent, AlgPoly modulus, std::string symbol);

    TowerPtr parent_;
    AlgPoly modulus_;
    std::string symbol_;
    int depth_ = 1;
};

template <class R>
struct Branch {
    TowerPtr tower;
    R value;
};

// Runs fn on top; on a SplitEvent, splits and retries on each branch.
// Branches are reported depth-first in factor/cofactor order.
template <class R>
std::vector<Branch<R>> on_branches(const TowerPtr& top, const std::function<R(const TowerPtr&)>& fn) {
    std::vector<Branch<R>> out;
    std::deque<TowerPtr> todo{top};
    while (!todo.empty()) {
        TowerPtr t = todo.front();
        todo.pop_front();
        try {
            out.push_back({t, fn(t)});
        } catch (const SplitEvent& ev) {
            auto parts = FieldTower::split(t, ev);
            for (auto it = parts.rbegin(); it != parts.rend(); ++it) todo.push_front(*it);
        }
    }
    return out;
}

// Complex embeddings. point[d-1] is the image of the level-d generator.
using cplx = std::complex<double>;
using EmbeddingPoint = std::vector<cplx>;

cplx to_complex(const AlgNum& a, const EmbeddingPoint& point);
double to_double(const Rational& q);
// Roots of sum c[i] x^i, Newton polished, ordered by argument in [-pi, pi)
// and then by modulus.
std::vector<cplx> complex_roots(const std::vector<cplx>& coeffs);
// Roots of T's modulus with the lower levels embedded at point_below.
std::vector<cplx> level_roots(const TowerPtr& T, const EmbeddingPoint& point_below);
// Largest |m_d(point)| over all levels of T; near zero iff point is a root
// of every modulus in the chain.
double embedding_defect(const TowerPtr& T, const EmbeddingPoint& point);
// Picks root choice[d] (default 0) of each level's modulus, bottom up.
EmbeddingPoint choose_embedding(const TowerPtr& T, const std::vector<std::size_t>& choice = {});

}  // namespace knotrep
