#pragma once

#include "cmv/greens.hpp"

namespace cmv {

/// Riccati problem X A X + B X + X C + D = 0 with the contraction data of
/// the fixed-point lemma. Mode selects which linear coefficient carries the
/// inverse in the iteration map.
struct RiccatiProblem {
    ComplexMatrix A, B, C, D;
    enum class Mode { B_invertible, C_invertible } mode = Mode::B_invertible;
};

/// Left side of the contraction condition; the solve requires it < 1.
double riccati_contraction_margin(const RiccatiProblem& p);

/// Norm bound on the fixed point guaranteed by the lemma.
double riccati_norm_bound(const RiccatiProblem& p);

struct RiccatiSolution {
    ComplexMatrix X;
    int iterations = 0;
    double residual = 0.0;
    double max_iterate_norm = 0.0;
};

/// Fixed-point iteration X_{n+1} = F(X_n) from X_0 = 0. Throws
/// ContractionViolated when the hypothesis fails, NoConvergence at the cap.
RiccatiSolution riccati_solve(const RiccatiProblem& p, double tol = 1e-13, int max_iter = 500);

/// Perturbation bound lambda(a,b) * sum of coefficient differences; checks
/// the (a, b) caps with 2ab(1+2a^2) <= 1 and throws HypothesisViolated.
double riccati_perturbation_bound(const RiccatiProblem& p1, const RiccatiProblem& p2, double a,
                                  double b);

double riccati_lambda(double a, double b);

/// The half-lattice data kinds of the uniqueness theorem.
enum class HalfLatticeDataKind { alpha, moments, taylor_m, taylor_M, taylor_phi };

struct HalfLatticePayload {
    HalfLatticeDataKind kind;
    Side side;
    // moments: nonnegative moments mu_0..mu_N of the spectral measure;
    // taylor kinds: the function's Taylor coefficients as a series;
    // alpha: passthrough coefficients.
    std::vector<ComplexMatrix> moment_table;
    MatrixPowerSeries series;
    std::map<int, ComplexMatrix> alpha;
};

/// Converts any data kind to Verblunsky coefficients: Taylor kinds travel
/// the conversion graph to moments, moments feed the reconstruction engine.
/// Plus side returns alpha_{k0+1 .. k0+N}, minus side alpha_{k0-N+1 .. k0}.
std::map<int, ComplexMatrix> half_lattice_invert(const HalfLatticePayload& payload, int k0,
                                                 int order);

struct ReconstructionReport {
    std::map<int, ComplexMatrix> recovered;
    std::map<int, ComplexMatrix> reference; // empty unless supplied
    std::map<int, double> per_site_error;   // filled against the reference
    int window_lo = 0;
    int window_hi = -1;
    std::string route;
};

void attach_reference(ReconstructionReport& rep, const VerblunskyData& data);

/// Full-lattice inversion from g(., k0), h(., k0): recovers rho_k0, alpha_k0
/// from the constant terms, builds M_-/M_+ and dispatches both half-lattice
/// problems. Guaranteed window [k0-N, k0+N+1].
ReconstructionReport full_lattice_invert_gh(const GreensData& gh, int order);

/// Full-lattice inversion from g(., k0-1), g(., k0) and alpha_k0 (case with
/// invertible alpha_k0): solves the Riccati equation for Phi_+ order by
/// order, recovers Phi_-^{-1}, dispatches both sides. Guaranteed window
/// [k0-N-1, k0+N+1]. The series solution is cross-checked by the pointwise
/// fixed point at small |z|.
ReconstructionReport full_lattice_invert_gg(const MatrixPowerSeries& g_prev,
                                            const MatrixPowerSeries& g, const ComplexMatrix& alpha_k0,
                                            int k0, int order);

struct LocalUniquenessReport {
    // Direction (a): alpha agreement on the window forces Taylor agreement.
    double gh_coefficient_deviation = 0.0;
    bool forward_ok = false;
    // Direction (b): Taylor agreement forces alpha agreement on the window.
    double alpha_deviation = 0.0;
    bool inverse_ok = false;
    int window_lo = 0, window_hi = -1;
};

LocalUniquenessReport local_uniqueness_check(const VerblunskyData& d1, const VerblunskyData& d2,
                                             int k0, int order);

} // namespace cmv
