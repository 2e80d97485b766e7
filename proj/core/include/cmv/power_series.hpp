#pragma once

#include <vector>

#include "cmv/linalg.hpp"

namespace cmv {

/// Matrix-valued Taylor series around z = 0, truncated at a fixed order N:
/// coefficients c[0..N] of z^0..z^N. Arithmetic never extends the order;
/// mixed-order operands truncate to the smaller N.
class MatrixPowerSeries {
  public:
    MatrixPowerSeries() = default;
    MatrixPowerSeries(int m, int order)
        : m_(m), c_(static_cast<size_t>(order) + 1, ComplexMatrix::zero(m, m)) {}

    static MatrixPowerSeries constant(const ComplexMatrix& c0, int order);
    static MatrixPowerSeries identity(int m, int order);

    int m() const noexcept { return m_; }
    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }

    const ComplexMatrix& coeff(int j) const { return c_.at(j); }
    ComplexMatrix& coeff(int j) { return c_.at(j); }

    MatrixPowerSeries truncated(int order) const;

    ComplexMatrix eval(complex z) const; // Horner

    double max_coeff_norm() const;

  private:
    int m_ = 0;
    std::vector<ComplexMatrix> c_;
};

MatrixPowerSeries operator+(const MatrixPowerSeries& f, const MatrixPowerSeries& g);
MatrixPowerSeries operator-(const MatrixPowerSeries& f, const MatrixPowerSeries& g);
MatrixPowerSeries operator*(const MatrixPowerSeries& f, const MatrixPowerSeries& g); // Cauchy
MatrixPowerSeries operator*(const ComplexMatrix& a, const MatrixPowerSeries& f);
MatrixPowerSeries operator*(const MatrixPowerSeries& f, const ComplexMatrix& a);
MatrixPowerSeries operator*(complex s, const MatrixPowerSeries& f);

/// Order-by-order forward substitution; requires invertible constant term.
MatrixPowerSeries invert(const MatrixPowerSeries& f);

/// f(c0 + c1 z) re-expanded at z = 0, truncated at f's order.
MatrixPowerSeries compose_affine(const MatrixPowerSeries& f, complex c0, complex c1);

/// Multiply by z (shift up, dropping the top coefficient).
MatrixPowerSeries shift_up(const MatrixPowerSeries& f);

/// Divide by z; requires the constant term to vanish within `tol` of the
/// series scale (it is discarded).
MatrixPowerSeries shift_down(const MatrixPowerSeries& f, double tol = 1e-8);

} // namespace cmv
