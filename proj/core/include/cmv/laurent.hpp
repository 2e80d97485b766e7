#pragma once

#include <map>
#include <utility>

#include "cmv/verblunsky.hpp"

namespace cmv {

/// Sparse matrix-valued Laurent polynomial: exponent -> m x m coefficient.
/// Kept in normal form (no stored zero coefficients).
class MatrixLaurentPolynomial {
  public:
    MatrixLaurentPolynomial() = default;
    explicit MatrixLaurentPolynomial(int m) : m_(m) {}

    static MatrixLaurentPolynomial monomial(int exponent, const ComplexMatrix& coeff);
    static MatrixLaurentPolynomial constant(const ComplexMatrix& coeff) { return monomial(0, coeff); }

    int m() const noexcept { return m_; }
    bool zero() const noexcept { return coeffs_.empty(); }
    const std::map<int, ComplexMatrix>& coeffs() const noexcept { return coeffs_; }

    /// Coefficient of z^e (zero matrix when absent).
    ComplexMatrix coeff(int e) const;
    void set_coeff(int e, const ComplexMatrix& c);

    int min_exponent() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    int max_exponent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    MatrixLaurentPolynomial& operator+=(const MatrixLaurentPolynomial& o);
    MatrixLaurentPolynomial& operator-=(const MatrixLaurentPolynomial& o);

    MatrixLaurentPolynomial shifted(int by) const; // multiply by z^by
    MatrixLaurentPolynomial left_mul(const ComplexMatrix& a) const;
    MatrixLaurentPolynomial right_mul(const ComplexMatrix& a) const;
    MatrixLaurentPolynomial scaled(complex s) const;
    /// Multiplication by a scalar Laurent polynomial sum_e s_e z^e.
    MatrixLaurentPolynomial scalar_poly_mul(const std::map<int, complex>& s) const;
    MatrixLaurentPolynomial adjoint_coeffs() const; // coefficient-wise adjoint, exponents negated

    ComplexMatrix eval(complex z) const;

    double max_coeff_norm() const;

  private:
    void prune(int e);
    int m_ = 0;
    std::map<int, ComplexMatrix> coeffs_;
};

MatrixLaurentPolynomial operator+(MatrixLaurentPolynomial a, const MatrixLaurentPolynomial& b);
MatrixLaurentPolynomial operator-(MatrixLaurentPolynomial a, const MatrixLaurentPolynomial& b);

enum class Kind { P, Q, R, S };

/// One of the four Laurent-polynomial solution families of the transfer
/// recursion, anchored at k0 with the parity-dependent initial data.
struct SolutionFamily {
    int k0 = 0;
    Side side = Side::plus;
    Kind kind = Kind::P;
    int m = 0;
    std::map<int, MatrixLaurentPolynomial> polys;

    const MatrixLaurentPolynomial& at(int k) const;
};

/// Both members of a recursion pair: `first` is the P/Q component, `second`
/// the R/S component. Generated over an arbitrary site range containing k0.
struct FamilyPair {
    int k0 = 0;
    Side side = Side::plus;
    bool second_kind = false; // false: (P, R); true: (Q, S)
    int m = 0;
    std::map<int, MatrixLaurentPolynomial> first, second;
};

/// Transfer matrix T(z, k): the 2m x 2m one-step propagator, odd/even cases.
ComplexMatrix transfer(const VerblunskyData& data, complex z, int k);

/// Coefficient set of one lattice site, detached from any window. Used by the
/// reconstruction engine, which discovers alpha_k on the fly.
struct SiteCoefficients {
    ComplexMatrix alpha, rho, rho_tilde, rho_inv, rho_tilde_inv;
    static SiteCoefficients from_alpha(const ComplexMatrix& alpha, double positivity_floor = 0.0);
};

struct PolyPair {
    MatrixLaurentPolynomial u, v;
};

/// One exact coefficient-level transfer step (k-1 -> k) and its inverse.
PolyPair step_pair_forward(const SiteCoefficients& s, int k, const PolyPair& prev);
PolyPair step_pair_backward(const SiteCoefficients& s, int k, const PolyPair& cur);

/// Initial data of the four families at the anchor site.
PolyPair seed_pair(int m, int k0, Side side, bool second_kind);

/// Generates the pair over sites [k_lo, k_hi] (k0 inside), stepping forward
/// with T and backward with its exact inverse at the coefficient level.
FamilyPair generate_pair(const VerblunskyData& data, int k0, Side side, bool second_kind,
                         int k_lo, int k_hi);

SolutionFamily generate_family(const VerblunskyData& data, int k0, Side side, Kind kind, int depth);

/// The parity rescalings P~, Q~ applied to a P or Q family.
MatrixLaurentPolynomial modified_variant(const MatrixLaurentPolynomial& p, int k0, Side side);

struct LeadingTerm {
    int exponent;
    ComplexMatrix coeff;
    bool invertible;
};

/// Leading exponent prescribed by the leading-order schedule, with its
/// coefficient. Throws MissingLeadingTerm when that coefficient vanishes.
LeadingTerm leading_term(const SolutionFamily& fam, int k);

/// The exponent the schedule prescribes for (kind, side, k0 parity, offset).
int leading_exponent(Kind kind, Side side, int k0, int k);

/// Scalar Laurent factors c(z, k0), d(z, k0) of the left/right connection.
std::map<int, complex> connection_c(int k0);
std::map<int, complex> connection_d(int k0);

struct MinusFamilies {
    SolutionFamily p_at_k0, q_at_k0, r_at_k0, s_at_k0;
    SolutionFamily p_at_k0m1, q_at_k0m1, r_at_k0m1, s_at_k0m1;
};

/// Builds the four minus-families at k0 and at k0-1 out of the plus-families
/// via the connection formulas; all eight returned over [k0-depth, k0].
MinusFamilies connect_left_right(const VerblunskyData& data, int k0, int depth);

/// Full-lattice 2m-column basis: k -> (P_0, P_1) with anchors
/// P(k0-1) = (I, 0), P(k0) = (0, I).
std::map<int, std::pair<MatrixLaurentPolynomial, MatrixLaurentPolynomial>>
full_lattice_basis(const VerblunskyData& data, int k0, int depth);

} // namespace cmv
