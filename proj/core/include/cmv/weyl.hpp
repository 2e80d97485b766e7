#pragma once

#include <functional>
#include <memory>

#include "cmv/power_series.hpp"
#include "cmv/spectral.hpp"

namespace cmv {

enum class WeylKind {
    m_plus,
    m_minus,
    M_plus,
    M_minus,
    Phi_plus,
    Phi_minus_inv,
    M_00,
    M_11,
    M_01,
    M_10,
    Phi_11,
};

const char* weyl_kind_name(WeylKind k);

/// A Weyl-Titchmarsh object: Taylor series at z = 0 plus, when available, a
/// pointwise evaluator on C \ (unit circle) and the producing measure.
struct WeylFunction {
    WeylKind kind = WeylKind::m_plus;
    int k0 = 0;
    MatrixPowerSeries series;
    std::function<ComplexMatrix(complex)> eval; // may be empty
    std::shared_ptr<const SpectralMeasure> measure; // optional

    bool has_eval() const { return static_cast<bool>(eval); }
    ComplexMatrix operator()(complex z) const;
};

/// Taylor coefficients of Phi_+(., k) by the Riccati recursion; coefficient j
/// depends only on alpha_{k+1} .. alpha_{k+j}.
MatrixPowerSeries phi_plus_series(const VerblunskyData& data, int k, int order);

/// Taylor coefficients of Phi_-(., k)^{-1}; coefficient j depends only on
/// alpha_{k-j} .. alpha_k.
MatrixPowerSeries phi_minus_inv_series(const VerblunskyData& data, int k, int order);

/// Conversion graph between the half-lattice function kinds. Both the series
/// and (when present) the evaluator are transported. The m_-(., k0-1) ->
/// M_-(., k0) edge needs alpha_k0.
WeylFunction convert(const WeylFunction& f, WeylKind to,
                     const ComplexMatrix* alpha_k0 = nullptr);

/// m_+/m_- built from an atomic measure: series of any order plus the exact
/// pointwise atom-sum evaluator.
WeylFunction m_from_measure(std::shared_ptr<const SpectralMeasure> mu, Side side, int k0,
                            int order);

/// Pointwise value +/- sum_a W_a (node+z)/(node-z); NodeCollision near atoms.
ComplexMatrix m_pointwise(const SpectralMeasure& mu, Side side, complex z);

struct CaratheodoryReport {
    double min_real_part_eigenvalue; // over the sample grid
    double max_schur_norm;           // op-norm over the grid (for Schur kinds)
    double herglotz_residual;        // NaN when no measure is attached
    double reflection_residual;      // |z| > 1 identity F(z) = -F(1/conj z)*
    bool caratheodory_ok;            // Re >= -1e-9 on grid
    bool schur_ok;                   // op-norm <= 1 + 1e-9 on grid
};

/// Grid used by the discipline checks: |z| in {0.3, 0.6, 0.9}, 16 angles.
std::vector<complex> caratheodory_grid();

/// Diagnostics never throw; missing evaluators yield NaN fields.
CaratheodoryReport caratheodory_tools(const WeylFunction& f);

/// Cayley transform between Caratheodory and Schur representatives:
/// Phi = (F - I)(F + I)^{-1} and back.
WeylFunction schur_cayley(const WeylFunction& f);

/// Series-level Cayley helpers used across the conversion graph.
MatrixPowerSeries cayley_to_schur(const MatrixPowerSeries& f);   // (F-I)(F+I)^{-1}
MatrixPowerSeries cayley_from_schur(const MatrixPowerSeries& s); // (I-S)^{-1}(I+S)

} // namespace cmv
