#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "cmv/error.hpp"

namespace cmv {

using complex = std::complex<double>;

/// Dense row-major complex matrix. The single value type carried through the
/// whole library: Verblunsky coefficients, Theta blocks, CMV truncations,
/// measure weights and series coefficients are all instances of it.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0) fail(errc::shape_mismatch, "matrix dimensions must be positive");
    }
    ComplexMatrix(int rows, int cols, std::initializer_list<complex> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    bool empty() const noexcept { return e_.empty(); }
    bool square() const noexcept { return rows_ == cols_; }

    complex& operator()(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const complex& operator()(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<complex>& entries() const noexcept { return e_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(complex s);

    /// Copies `block` into this matrix with upper-left corner (r0, c0).
    void set_block(int r0, int c0, const ComplexMatrix& block);
    ComplexMatrix block(int r0, int c0, int rows, int cols) const;

    double frobenius_norm() const;
    double max_abs() const;
    complex trace() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<complex> e_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, complex s);
ComplexMatrix operator-(ComplexMatrix a);

bool same_shape(const ComplexMatrix& a, const ComplexMatrix& b);
void require_square(const ComplexMatrix& a, const char* who);

/// ‖A − A*‖_F scaled test helper.
double hermitian_defect(const ComplexMatrix& a);

} // namespace cmv
