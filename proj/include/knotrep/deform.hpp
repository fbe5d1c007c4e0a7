#pragma once

// Numeric deformation of the SL(n) representation along a cohomology
// direction, Newton projection, Burnside closure and the trace test.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotrep/cohomology.hpp"
#include "knotrep/repbuilder.hpp"

namespace knotrep {

using CMat = Eigen::MatrixXcd;

// Numeric thresholds. KNOTREP_TOL="newton=1e-12,max_iter=80" overrides fields.
struct Tolerances {
    double embed = 1e-12;        // residual of an embedded exact representation
    double cocycle = 1e-8;       // Jacobian residual of a direction
    double newton = 1e-10;       // Newton stops below this residual
    int max_iter = 50;
    int diverge_steps = 5;       // consecutive non-decreasing steps
    double newton_start = 0.1;   // refuse to start above this residual
    double burnside = 1e-9;      // relative singular-value cut in span closure
    double indeterminate = 10;   // borderline factor around the cut
    double eigen_gap = 1e-8;
    double trace = 1e-6;
    double commutator = 1e-6;
    double det = 1e-10;

    static Tolerances from_env();
    // "key=value,key=value"; unknown keys raise invalid_argument
    static Tolerances parse(const std::string& spec);
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceError : NumericError {
    using NumericError::NumericError;
};

struct FloatRep {
    Presentation presentation;
    std::size_t n = 2;
    std::vector<CMat> gens;
    double t = 0;
    std::string provenance;

    CMat image(const Word& w) const;
    // max over relators of the infinity norm of rho(W_r) - I
    double residual() const;
};

FloatRep embed_float(const Representation& rho, const EmbeddingPoint& point, const Tolerances& tol = {});

// v holds generator-major sl(n) coordinates (see module_ad); rho_t(S_j) =
// (I + t v(S_j)) rho(S_j).
FloatRep first_order(const FloatRep& rho, const std::vector<cplx>& v, double t, const Tolerances& tol = {});
CMat sl_matrix(const std::vector<cplx>& coords, std::size_t n);

struct NewtonTrace {
    std::vector<double> residuals;  // before each step, then the final one
    int iterations = 0;
    bool converged = false;
    bool rank_deficient = false;    // Jacobian rank below unknowns minus gauge
};

// Gauss-Newton on the relator equations plus det = 1, with the first column
// of rho(S_1) and the (n, 1) entry of rho(S_2) held fixed. S_1 is the
// meridian; S_2 is the next generator.
FloatRep newton_project(const FloatRep& rho, const Tolerances& tol = {}, NewtonTrace* trace = nullptr);

struct BurnsideResult {
    std::size_t dim = 0;
    bool indeterminate = false;
};
BurnsideResult burnside_serial(const std::vector<CMat>& mats, const Tolerances& tol = {});
BurnsideResult burnside_parallel(const std::vector<CMat>& mats, const Tolerances& tol = {});
std::size_t burnside_dim(const std::vector<CMat>& mats, const Tolerances& tol = {});

enum class Irreducibility { irreducible, reducible, indeterminate };
Irreducibility is_irreducible(const FloatRep& rho, const Tolerances& tol = {});
const char* to_string(Irreducibility v);

// True when |tr rho(meridian)| exceeds the threshold, so rho cannot be an
// irreducible metabelian representation.
bool metabelian_trace_test(const FloatRep& rho, const Tolerances& tol = {});
// Exact: tr rho_lambda(S_1) = lambda^-1 (lambda^n + n - 1) is nonzero.
bool exact_trace_nonzero(const Representation& sl);

// Conjugates so that rho(S_1) has zero first row and column off (1, 1); the
// isolated eigenvalue is the one nearest `target`.
FloatRep eigen_gauge(const FloatRep& rho, cplx target, const Tolerances& tol = {});

// Largest deviation from I over double commutators of seeded random words.
double commutator_deviation(const FloatRep& rho, std::uint64_t seed, int samples = 64);

struct DeformReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0;
    std::size_t burnside = 0;
    Irreducibility irreducible = Irreducibility::indeterminate;
    cplx trace_meridian;
    bool trace_test = false;
    double commutator = 0;
    bool non_metabelian = false;
    double t = 0;
    std::string error;  // set when a ladder rung failed numerically
    FloatRep rep;
};

// embed, step along the direction, project, and classify
DeformReport deform(const Representation& sl, const std::vector<AlgNum>& direction, double t, std::uint64_t seed,
                    const EmbeddingPoint& point, const Tolerances& tol = {});

// Continuation over increasing t: each rung starts from the previous
// projected solution stepped by (t_k - t_{k-1}) v. Stops at the first failure,
// which is recorded in that rung's error field.
std::vector<DeformReport> deform_ladder(const Representation& sl, const std::vector<AlgNum>& direction,
                                        const std::vector<double>& ts, std::uint64_t seed, const EmbeddingPoint& point,
                                        const Tolerances& tol = {});
inline const std::vector<double> kDefaultLadder = {1e-3, 1e-2, 5e-2};

}  // namespace knotrep
