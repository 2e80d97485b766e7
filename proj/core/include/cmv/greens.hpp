#pragma once

#include "cmv/weyl.hpp"

namespace cmv {

/// Weyl solution values U_pm(z, k, k0) = Q_+ + P_+ M_pm and the auxiliary
/// V_pm = S_+ + R_+ M_pm at a fixed z over a site range.
struct WeylSolutionPair {
    int k0 = 0;
    Side side = Side::plus;
    complex z;
    std::map<int, ComplexMatrix> U, V;
};

/// Parity-signed conserved form ((-1)^{k+1}/2)[u1*.u2 - v1*.v2]; the caller
/// supplies pair 1 already evaluated at 1/conj(z).
ComplexMatrix wronskian_values(const ComplexMatrix& u1, const ComplexMatrix& v1,
                               const ComplexMatrix& u2, const ComplexMatrix& v2, int k);

/// Wronskian of two polynomial solution pairs at site k; pair 1 is evaluated
/// at 1/conj(z) internally.
ComplexMatrix wronskian(const MatrixLaurentPolynomial& u1, const MatrixLaurentPolynomial& v1,
                        const MatrixLaurentPolynomial& u2, const MatrixLaurentPolynomial& v2,
                        int k, complex z);

/// W(z, k0) = M_+ - M_-, as series and evaluator.
WeylFunction wronskian_W(const WeylFunction& m_plus, const WeylFunction& m_minus);

/// Residual of the symmetry M_+ W^{-1} M_- = M_- W^{-1} M_+ at a point.
double wronskian_symmetry_residual(const WeylFunction& m_plus, const WeylFunction& m_minus,
                                   complex z);

/// Everything needed to evaluate the resolvent of the lattice problem at
/// points: the half-lattice Weyl functions of the window (exact for the
/// split truncation) plus the polynomial families around k0.
class GreensEvaluator {
  public:
    GreensEvaluator(const VerblunskyData& data, int k0, int range_lo, int range_hi);

    int k0() const { return k0_; }
    const WeylFunction& M_plus() const { return mp_; }
    const WeylFunction& M_minus() const { return mm_; }

    ComplexMatrix weyl_value(Side side, complex z, int k) const;     // U_pm(z,k,k0)
    ComplexMatrix weyl_aux_value(Side side, complex z, int k) const; // V_pm(z,k,k0)
    WeylSolutionPair weyl_solution(Side side, complex z) const;

    /// Resolvent entry (U - zI)^{-1}(k, k') by the Weyl-solution formula.
    ComplexMatrix resolvent(complex z, int k, int kp) const;

    /// Closed forms for the diagonal and neighboring entries at site k
    /// (k within one site of k0 uses the stored M functions).
    ComplexMatrix diagonal_entry(complex z, int k) const;        // (k,k)
    ComplexMatrix off_diagonal_up(complex z, int k) const;       // (k-1,k)
    ComplexMatrix off_diagonal_down(complex z, int k) const;     // (k,k-1)

  private:
    ComplexMatrix wronskian_matrix(complex z) const;

    int k0_;
    int m_;
    const VerblunskyData* data_;
    WeylFunction mp_, mm_; // M_plus, M_minus with pointwise evaluators
    FamilyPair pr_, qs_;
};

/// Taylor data of the diagonal and neighboring-off-diagonal Green's entries.
struct GreensData {
    int k0 = 0;
    MatrixPowerSeries g, h;
};

/// Neumann route: exact low-order Taylor coefficients of g(., k0), h(., k0)
/// as blocks of U^{-(j+1)}, computed by repeated application of U*.
/// Requires window radius >= 2(N+2) around k0.
GreensData greens_series(const VerblunskyData& data, int k0, int order);

/// Closed-form route through the half-lattice Weyl functions; cross-checks
/// the Neumann route (which stays authoritative).
GreensData greens_series_closed(const VerblunskyData& data, int k0, int order);

/// The four blocks of the 2m x 2m full-lattice Weyl-Titchmarsh function and
/// the Schur function of its (1,1) block, as series at z = 0.
struct MMatrixBlocks {
    WeylFunction m00, m01, m10, m11, phi11;
};

MMatrixBlocks m_matrix_series(const VerblunskyData& data, int k0, int order);

/// Pointwise blocks from an evaluator (exact for the split truncation).
MMatrixBlocks m_matrix_point(const GreensEvaluator& ev, complex z);

/// Series of M_plus / M_minus at k0 from the coefficient data alone, through
/// the Schur-function Taylor recursions.
WeylFunction M_plus_series_from_data(const VerblunskyData& data, int k0, int order);
WeylFunction M_minus_series_from_data(const VerblunskyData& data, int k0, int order);

} // namespace cmv
