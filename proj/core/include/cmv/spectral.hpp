#pragma once

#include <map>
#include <vector>

#include "cmv/laurent.hpp"

namespace cmv {

/// Atomic matrix-valued measure on the unit circle, normalized to total
/// weight I_m. Finite truncations have exactly atomic spectral measures, so
/// every integral in this module is a finite sum over atoms.
struct SpectralMeasure {
    struct Atom {
        complex node;         // unimodular
        ComplexMatrix weight; // m x m Hermitian PSD
    };
    int m = 0;
    std::vector<Atom> atoms;

    ComplexMatrix total_weight() const;
};

/// 2m x 2m atomic measure collecting the (k0-1, k0) block rows of the
/// spectral projections of a full-window truncation.
struct BlockSpectralMeasure {
    struct Atom {
        complex node;
        ComplexMatrix weight; // 2m x 2m Hermitian PSD
    };
    int m = 0;
    std::vector<Atom> atoms;
};

/// Spectral measure dOmega(.,k0) of a CMV truncation: the block-(k0,k0)
/// compression of its spectral projections. Atoms with weight below 1e-14
/// are dropped; nodes within 1e-12 are merged by weight addition.
SpectralMeasure measure_from_operator(const CMVOperator& op, int k0);

/// Moments  mu_j = \oint zeta^j dOmega, j = 0..k_max.
std::vector<ComplexMatrix> moments(const SpectralMeasure& mu, int k_max);

/// Bilinear moment functional <f, g> = \oint f dOmega g^* for Laurent
/// polynomials, backed by a moment table with mu_{-j} = mu_j^*. Moments that
/// were never supplied count as zero (they only ever enter multiplied by a
/// vanishing coefficient when the data genuinely determines the result).
class MomentFunctional {
  public:
    MomentFunctional(int m, std::vector<ComplexMatrix> nonneg_moments);
    static MomentFunctional from_measure(const SpectralMeasure& mu, int depth_hint);

    int m() const noexcept { return m_; }
    int available() const noexcept { return static_cast<int>(mu_.size()) - 1; }
    ComplexMatrix moment(int j) const;
    ComplexMatrix pair(const MatrixLaurentPolynomial& f, const MatrixLaurentPolynomial& g) const;

  private:
    int m_ = 0;
    std::vector<ComplexMatrix> mu_; // index j >= 0
};

/// Max over k, k' <= depth of the orthonormality residual of a P or R family
/// against the measure, evaluated by atom summation.
double orthonormality_check(const SpectralMeasure& mu, const SolutionFamily& fam, int depth);

/// Szegő-style reconstruction engine: alternately extracts alpha_k from the
/// moment functional and advances the orthonormal pair one transfer step.
/// This realizes the Gram-Schmidt construction in the normalization the
/// recursion dictates and is the constructive content of the reconstruction
/// theorem. Throws DegenerateMeasure when I - alpha*alpha loses positivity.
struct SzegoResult {
    std::map<int, ComplexMatrix> alpha;
    FamilyPair family; // the (P, R) pair over the traversed range
};
SzegoResult szego_recursion(const MomentFunctional& fn, int k0, Side side, int depth);

/// Orthonormal family (kinds P or R) recovered from the measure alone.
SolutionFamily gram_schmidt(const SpectralMeasure& mu, int k0, Side side, Kind kind, int depth);

/// Verblunsky coefficients recovered from the measure: the plus side yields
/// alpha_{k0+1..k0+depth}, the minus side alpha_{k0-depth+1..k0}.
std::map<int, ComplexMatrix> reconstruct_alpha(const SpectralMeasure& mu, int k0, Side side,
                                               int depth);
std::map<int, ComplexMatrix> reconstruct_alpha(const MomentFunctional& fn, int k0, Side side,
                                               int depth);

/// +/- \oint (zeta+z)/(zeta-z) (F(zeta,k) - F(z,k)) dOmega with F the modified
/// first-kind family (P~) or the R family; equals the corresponding
/// second-kind polynomial (Q~ resp. S) away from k0.
ComplexMatrix second_kind_from_measure(const SpectralMeasure& mu, const SolutionFamily& fam,
                                       complex z, int k);

BlockSpectralMeasure block_measure(const CMVOperator& op, int k0);

/// Max residual of the full-lattice orthonormality relation for the 2m-column
/// basis over |k|, |k'| <= depth around k0.
double block_orthonormality_check(
    const BlockSpectralMeasure& bmu,
    const std::map<int, std::pair<MatrixLaurentPolynomial, MatrixLaurentPolynomial>>& basis,
    int k0, int depth);

} // namespace cmv
