#include "knotrep/tower.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace knotrep {

namespace {

TowerPtr common_tower(const TowerPtr& a, const TowerPtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (a->depth() < b->depth()) {
        if (b->level(a->depth()) == a) return b;
    } else if (b->depth() < a->depth()) {
        if (a->level(b->depth()) == b) return a;
    }
    throw std::logic_error("algebraic numbers from unrelated towers");
}

std::vector<AlgNum> add_coeffs(std::vector<AlgNum> a, const std::vector<AlgNum>& b, bool subtract) {
    if (a.size() < b.size()) a.resize(b.size(), AlgNum(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = subtract ? a[i] - b[i] : a[i] + b[i];
    return a;
}

}  // namespace

int AlgNum::depth() const { return tower_ ? tower_->depth() : 0; }

const Rational& AlgNum::rational() const {
    if (tower_) throw std::logic_error("algebraic number is not rational");
    return q_;
}

std::vector<AlgNum> AlgNum::coeffs_over(const TowerPtr& T) const {
    if (tower_ == T) return rep_;
    return {*this};
}

AlgNum AlgNum::from_rep(const TowerPtr& T, std::vector<AlgNum> coeffs) {
    if (!T) {
        if (coeffs.empty()) return AlgNum(0);
        if (coeffs.size() > 1) throw std::logic_error("residue over Q must be constant");
        return coeffs[0];
    }
    AlgPoly p = AlgPoly::from_coeffs(std::move(coeffs));
    if (p.degree() >= T->modulus().degree()) p = p % T->modulus();
    if (p.degree() <= 0) return p.coeff(0);
    AlgNum r;
    r.tower_ = T;
    r.rep_ = p.coeffs();
    return r;
}

AlgNum AlgNum::project(const TowerPtr& target) const {
    if (!tower_) return *this;
    const int d = tower_->depth();
    if (!target || target->depth() < d) throw std::logic_error("projection target too shallow");
    TowerPtr lvl = target->level(d);
    if (lvl == tower_) return *this;
    std::vector<AlgNum> c;
    c.reserve(rep_.size());
    for (const auto& x : rep_) c.push_back(x.project(lvl->parent()));
    return from_rep(lvl, std::move(c));
}

AlgNum AlgNum::operator-() const {
    if (!tower_) return AlgNum(Rational(-q_));
    AlgNum r = *this;
    for (auto& c : r.rep_) c = -c;
    return r;
}

AlgNum operator+(const AlgNum& a, const AlgNum& b) {
    if (!a.tower_ && !b.tower_) return AlgNum(Rational(a.q_ + b.q_));
    TowerPtr T = common_tower(a.tower_, b.tower_);
    return AlgNum::from_rep(T, add_coeffs(a.coeffs_over(T), b.coeffs_over(T), false));
}

AlgNum operator-(const AlgNum& a, const AlgNum& b) {
    if (!a.tower_ && !b.tower_) return AlgNum(Rational(a.q_ - b.q_));
    TowerPtr T = common_tower(a.tower_, b.tower_);
    return AlgNum::from_rep(T, add_coeffs(a.coeffs_over(T), b.coeffs_over(T), true));
}

AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    if (!a.tower_ && !b.tower_) return AlgNum(Rational(a.q_ * b.q_));
    if (is_zero(a) || is_zero(b)) return AlgNum(0);
    TowerPtr T = common_tower(a.tower_, b.tower_);
    // scalar times residue needs no reduction
    if (a.tower_ != T) {
        std::vector<AlgNum> c = b.rep_;
        for (auto& x : c) x = a * x;
        return AlgNum::from_rep(T, std::move(c));
    }
    if (b.tower_ != T) return b * a;
    AlgPoly p = AlgPoly::from_coeffs(a.rep_) * AlgPoly::from_coeffs(b.rep_);
    return AlgNum::from_rep(T, p.coeffs());
}

AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * inverse(b); }

bool operator==(const AlgNum& a, const AlgNum& b) { return is_zero(a - b); }

AlgNum inverse(const AlgNum& a) {
    if (!a.tower_) return AlgNum(knotrep::inverse(a.q_));
    const TowerPtr& T = a.tower_;
    auto X = xgcd(AlgPoly::from_coeffs(a.rep_), T->modulus());
    if (X.g.degree() > 0) throw SplitEvent{T, X.g, T->modulus() / X.g};
    return AlgNum::from_rep(T, X.s.coeffs());
}

std::string to_string(const AlgNum& a) {
    if (!a.tower_) return a.q_.get_str();
    return AlgPoly::from_coeffs(a.rep_).str(a.tower_->symbol());
}

AlgNum pow(const AlgNum& a, long e) {
    AlgNum base = e < 0 ? inverse(a) : a;
    unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    AlgNum r(1);
    while (k) {
        if (k & 1u) r = r * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return r;
}

FieldTower::FieldTower(TowerPtr parent, AlgPoly modulus, std::string symbol)
    : parent_(std::move(parent)), modulus_(std::move(modulus)), symbol_(std::move(symbol)) {
    depth_ = parent_ ? parent_->depth() + 1 : 1;
}

TowerPtr FieldTower::make(TowerPtr parent, AlgPoly modulus, std::string symbol) {
    return TowerPtr(new FieldTower(std::move(parent), std::move(modulus), std::move(symbol)));
}

TowerPtr FieldTower::adjoin_root(const AlgPoly& m, const TowerPtr& parent, std::string symbol) {
    if (m.degree() < 1) throw std::invalid_argument("modulus must have positive degree");
    for (const auto& c : m.coeffs()) {
        if (c.tower() && common_tower(c.tower(), parent) != parent)
            throw std::invalid_argument("modulus coefficients do not lie in the parent field");
    }
    AlgPoly mm = m.monic();
    if (!is_squarefree(mm))
        throw std::invalid_argument("modulus " + mm.str("x") + " is not squarefree");
    return make(parent, std::move(mm), std::move(symbol));
}

TowerPtr FieldTower::adjoin_nth_root(const AlgNum& alpha, unsigned n, std::string symbol) {
    if (n == 0) throw std::invalid_argument("root index must be positive");
    if (is_zero(alpha)) throw std::invalid_argument("cannot take roots of zero");
    std::vector<AlgNum> c(n + 1, AlgNum(0));
    c[0] = -alpha;
    c[n] = AlgNum(1);
    return adjoin_root(AlgPoly::from_coeffs(std::move(c)), alpha.tower(), std::move(symbol));
}

TowerPtr FieldTower::level(int d) const {
    if (d < 0 || d > depth_) throw std::out_of_range("tower level out of range");
    TowerPtr cur = shared_from_this();
    while (cur && cur->depth() > d) cur = cur->parent();
    return cur;
}

AlgNum FieldTower::generator() const { return AlgNum::from_rep(shared_from_this(), {AlgNum(0), AlgNum(1)}); }

std::vector<TowerPtr> FieldTower::split(const TowerPtr& top, const SplitEvent& ev) {
    const int k = ev.tower->depth();
    if (top->depth() < k || top->level(k) != ev.tower) throw std::logic_error("split event from a foreign tower");
    std::vector<TowerPtr> out;
    for (const AlgPoly* part : {&ev.factor, &ev.cofactor}) {
        TowerPtr cur = make(ev.tower->parent(), part->monic(), ev.tower->symbol());
        for (int d = k + 1; d <= top->depth(); ++d) {
            TowerPtr old = top->level(d);
            std::vector<AlgNum> c;
            for (const auto& x : old->modulus().coeffs()) c.push_back(x.project(cur));
            cur = make(cur, AlgPoly::from_coeffs(std::move(c)), old->symbol());
        }
        out.push_back(cur);
    }
    return out;
}

double to_double(const Rational& q) { return q.get_d(); }

cplx to_complex(const AlgNum& a, const EmbeddingPoint& point) {
    if (a.is_rational()) return cplx(to_double(a.rational()), 0.0);
    const int d = a.depth();
    if (static_cast<int>(point.size()) < d) throw std::invalid_argument("embedding point too short");
    const cplx x = point[static_cast<std::size_t>(d - 1)];
    cplx acc(0.0, 0.0);
    const auto& r = a.rep();
    for (auto it = r.rbegin(); it != r.rend(); ++it) acc = acc * x + to_complex(*it, point);
    return acc;
}

namespace {

cplx horner(const std::vector<cplx>& c, cplx x) {
    cplx acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double root_key_arg(cplx z) {
    double a = std::arg(z);
    if (a >= std::numbers::pi - 1e-12) a -= 2 * std::numbers::pi;
    return a;
}

}  // namespace

std::vector<cplx> complex_roots(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() < 2) return {};
    const std::size_t n = c.size() - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 1; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    for (std::size_t i = 0; i < n; ++i) comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<cplx> roots;
    std::vector<cplx> dc;
    for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<double>(i));
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        cplx z = es.eigenvalues()(i);
        for (int it = 0; it < 8; ++it) {
            const cplx d = horner(dc, z);
            if (std::abs(d) == 0.0) break;
            const cplx step = horner(c, z) / d;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        if (std::abs(z.imag()) < 1e-12 * std::max(1.0, std::abs(z))) z = cplx(z.real(), 0.0);
        roots.push_back(z);
    }
    std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        const double aa = root_key_arg(a), ab = root_key_arg(b);
        if (std::abs(aa - ab) > 1e-9) return aa < ab;
        return std::abs(a) < std::abs(b);
    });
    return roots;
}

std::vector<cplx> level_roots(const TowerPtr& T, const EmbeddingPoint& point_below) {
    std::vector<cplx> c;
    for (const auto& x : T->modulus().coeffs()) c.push_back(to_complex(x, point_below));
    return complex_roots(c);
}

double embedding_defect(const TowerPtr& T, const EmbeddingPoint& point) {
    double worst = 0.0;
    for (TowerPtr cur = T; cur; cur = cur->parent()) {
        const auto d = static_cast<std::size_t>(cur->depth());
        if (point.size() < d) return INFINITY;
        std::vector<cplx> c;
        for (const auto& x : cur->modulus().coeffs()) c.push_back(to_complex(x, point));
        worst = std::max(worst, std::abs(horner(c, point[d - 1])));
    }
    return worst;
}

EmbeddingPoint choose_embedding(const TowerPtr& T, const std::vector<std::size_t>& choice) {
    EmbeddingPoint point;
    if (!T) return point;
    for (int d = 1; d <= T->depth(); ++d) {
        const auto roots = level_roots(T->level(d), point);
        const std::size_t k = static_cast<std::size_t>(d - 1) < choice.size() ? choice[static_cast<std::size_t>(d - 1)] : 0;
        if (k >= roots.size()) throw std::out_of_range("embedding choice exceeds the number of roots");
        point.push_back(roots[k]);
    }
    return point;
}

}  // namespace knotrep
