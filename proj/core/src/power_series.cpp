#include "cmv/power_series.hpp"

#include <algorithm>
#include <cmath>

namespace cmv {

MatrixPowerSeries MatrixPowerSeries::constant(const ComplexMatrix& c0, int order) {
    MatrixPowerSeries f(c0.rows(), order);
    f.coeff(0) = c0;
    return f;
}

MatrixPowerSeries MatrixPowerSeries::identity(int m, int order) {
    return constant(ComplexMatrix::identity(m), order);
}

MatrixPowerSeries MatrixPowerSeries::truncated(int order) const {
    MatrixPowerSeries f(m_, order);
    for (int j = 0; j <= std::min(order, this->order()); ++j) f.coeff(j) = c_[j];
    return f;
}

ComplexMatrix MatrixPowerSeries::eval(complex z) const {
    ComplexMatrix v = c_.back();
    for (int j = order() - 1; j >= 0; --j) v = z * v + c_[j];
    return v;
}

double MatrixPowerSeries::max_coeff_norm() const {
    double s = 0.0;
    for (const auto& c : c_) s = std::max(s, c.frobenius_norm());
    return s;
}

namespace {
int common_order(const MatrixPowerSeries& f, const MatrixPowerSeries& g) {
    if (f.m() != g.m()) fail(errc::shape_mismatch, "series order mismatch in matrix size");
    return std::min(f.order(), g.order());
}
} // namespace

MatrixPowerSeries operator+(const MatrixPowerSeries& f, const MatrixPowerSeries& g) {
    const int n = common_order(f, g);
    MatrixPowerSeries r(f.m(), n);
    for (int j = 0; j <= n; ++j) r.coeff(j) = f.coeff(j) + g.coeff(j);
    return r;
}

MatrixPowerSeries operator-(const MatrixPowerSeries& f, const MatrixPowerSeries& g) {
    const int n = common_order(f, g);
    MatrixPowerSeries r(f.m(), n);
    for (int j = 0; j <= n; ++j) r.coeff(j) = f.coeff(j) - g.coeff(j);
    return r;
}

MatrixPowerSeries operator*(const MatrixPowerSeries& f, const MatrixPowerSeries& g) {
    const int n = common_order(f, g);
    MatrixPowerSeries r(f.m(), n);
    for (int j = 0; j <= n; ++j) {
        ComplexMatrix s = ComplexMatrix::zero(f.m(), f.m());
        for (int l = 0; l <= j; ++l) s += f.coeff(l) * g.coeff(j - l);
        r.coeff(j) = std::move(s);
    }
    return r;
}

MatrixPowerSeries operator*(const ComplexMatrix& a, const MatrixPowerSeries& f) {
    MatrixPowerSeries r(f.m(), f.order());
    for (int j = 0; j <= f.order(); ++j) r.coeff(j) = a * f.coeff(j);
    return r;
}

MatrixPowerSeries operator*(const MatrixPowerSeries& f, const ComplexMatrix& a) {
    MatrixPowerSeries r(f.m(), f.order());
    for (int j = 0; j <= f.order(); ++j) r.coeff(j) = f.coeff(j) * a;
    return r;
}

MatrixPowerSeries operator*(complex s, const MatrixPowerSeries& f) {
    MatrixPowerSeries r(f.m(), f.order());
    for (int j = 0; j <= f.order(); ++j) r.coeff(j) = s * f.coeff(j);
    return r;
}

MatrixPowerSeries invert(const MatrixPowerSeries& f) {
    ComplexMatrix c0_inv;
    try {
        c0_inv = inverse(f.coeff(0));
    } catch (const error&) {
        fail(errc::non_invertible_constant_term, "series inversion needs invertible c_0");
    }
    MatrixPowerSeries g(f.m(), f.order());
    g.coeff(0) = c0_inv;
    for (int j = 1; j <= f.order(); ++j) {
        ComplexMatrix s = ComplexMatrix::zero(f.m(), f.m());
        for (int l = 1; l <= j; ++l) s += f.coeff(l) * g.coeff(j - l);
        g.coeff(j) = -(c0_inv * s);
    }
    return g;
}

MatrixPowerSeries compose_affine(const MatrixPowerSeries& f, complex c0, complex c1) {
    const int n = f.order();
    MatrixPowerSeries r(f.m(), n);
    // Binomial re-expansion: (c0 + c1 z)^j = sum_i C(j,i) c0^{j-i} c1^i z^i.
    std::vector<std::vector<double>> binom(n + 1, std::vector<double>(n + 1, 0.0));
    for (int j = 0; j <= n; ++j) {
        binom[j][0] = 1.0;
        for (int i = 1; i <= j; ++i)
            binom[j][i] = binom[j - 1][i - 1] + (i <= j - 1 ? binom[j - 1][i] : 0.0);
    }
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= j; ++i) {
            const complex w = binom[j][i] * std::pow(c0, j - i) * std::pow(c1, i);
            if (w == complex(0.0)) continue;
            r.coeff(i) += w * f.coeff(j);
        }
    }
    return r;
}

MatrixPowerSeries shift_up(const MatrixPowerSeries& f) {
    MatrixPowerSeries r(f.m(), f.order());
    for (int j = 1; j <= f.order(); ++j) r.coeff(j) = f.coeff(j - 1);
    return r;
}

MatrixPowerSeries shift_down(const MatrixPowerSeries& f, double tol) {
    const double scale = std::max(1.0, f.max_coeff_norm());
    if (f.coeff(0).frobenius_norm() > tol * scale)
        fail(errc::series_order_solve_failed, "shift_down: constant term does not vanish");
    if (f.order() < 1) fail(errc::series_order_solve_failed, "shift_down: order too small");
    MatrixPowerSeries r(f.m(), f.order() - 1);
    for (int j = 0; j < f.order(); ++j) r.coeff(j) = f.coeff(j + 1);
    return r;
}

} // namespace cmv
