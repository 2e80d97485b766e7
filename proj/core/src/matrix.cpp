#include "cmv/matrix.hpp"

#include <cmath>

namespace cmv {

const char* errc_name(errc c) {
    switch (c) {
        case errc::not_hermitian: return "NotHermitian";
        case errc::not_psd: return "NotPSD";
        case errc::no_convergence: return "NoConvergence";
        case errc::singular: return "Singular";
        case errc::cayley_degenerate: return "CayleyDegenerate";
        case errc::not_unitary: return "NotUnitary";
        case errc::norm_too_large: return "NormTooLarge";
        case errc::shape_mismatch: return "ShapeMismatch";
        case errc::window_too_small: return "WindowTooSmall";
        case errc::out_of_window: return "OutOfWindow";
        case errc::zero_argument: return "ZeroArgument";
        case errc::depth_mismatch: return "DepthMismatch";
        case errc::missing_leading_term: return "MissingLeadingTerm";
        case errc::degenerate_measure: return "DegenerateMeasure";
        case errc::node_collision: return "NodeCollision";
        case errc::non_invertible_constant_term: return "NonInvertibleConstantTerm";
        case errc::missing_alpha: return "MissingAlpha";
        case errc::singular_wronskian: return "SingularWronskian";
        case errc::window_too_narrow: return "WindowTooNarrow";
        case errc::contraction_violated: return "ContractionViolated";
        case errc::hypothesis_violated: return "HypothesisViolated";
        case errc::h_not_invertible: return "HNotInvertible";
        case errc::alpha_not_invertible: return "AlphaNotInvertible";
        case errc::series_order_solve_failed: return "SeriesOrderSolveFailed";
        case errc::boundary_unavailable: return "BoundaryUnavailable";
        case errc::bad_config: return "BadConfig";
    }
    return "UnknownError";
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::initializer_list<complex> entries)
    : ComplexMatrix(rows, cols) {
    if (entries.size() != e_.size())
        fail(errc::shape_mismatch, "initializer length does not match rows*cols");
    size_t i = 0;
    for (const auto& v : entries) e_[i++] = v;
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r(i, j) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (!same_shape(*this, o)) fail(errc::shape_mismatch, "operator+= shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (!same_shape(*this, o)) fail(errc::shape_mismatch, "operator-= shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(complex s) {
    for (auto& v : e_) v *= s;
    return *this;
}

void ComplexMatrix::set_block(int r0, int c0, const ComplexMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
        fail(errc::shape_mismatch, "set_block out of range");
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

ComplexMatrix ComplexMatrix::block(int r0, int c0, int rows, int cols) const {
    if (r0 < 0 || c0 < 0 || r0 + rows > rows_ || c0 + cols > cols_)
        fail(errc::shape_mismatch, "block out of range");
    ComplexMatrix b(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : e_) s += std::norm(v);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const auto& v : e_) s = std::max(s, std::abs(v));
    return s;
}

complex ComplexMatrix::trace() const {
    complex t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) fail(errc::shape_mismatch, "operator* inner dimension mismatch");
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const complex aik = a(i, k);
            if (aik == complex(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= complex(-1.0); }

bool same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
}

void require_square(const ComplexMatrix& a, const char* who) {
    if (!a.square()) fail(errc::shape_mismatch, std::string(who) + " requires a square matrix");
}

double hermitian_defect(const ComplexMatrix& a) { return (a - a.adjoint()).frobenius_norm(); }

} // namespace cmv
