#pragma once

#include <random>

#include "cmv/sampling.hpp"

namespace cmv::testing {

inline ComplexMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a(i, j) = complex(normal(rng), normal(rng));
    return a;
}

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_psd(int n, std::mt19937_64& rng) {
    const ComplexMatrix a = random_matrix(n, n, rng);
    return a * a.adjoint();
}

inline double rel_residual(const ComplexMatrix& r, const ComplexMatrix& ref) {
    return r.frobenius_norm() / std::max(1.0, ref.frobenius_norm());
}

/// Constant scalar coefficient window alpha_k = value on [k_min, k_max].
inline VerblunskyData constant_scalar_window(double value, int k_min, int k_max) {
    std::map<int, ComplexMatrix> w;
    for (int k = k_min; k <= k_max; ++k) w.emplace(k, ComplexMatrix(1, 1, {value}));
    return derive(w);
}

inline VerblunskyData zero_window(int m, int k_min, int k_max) {
    std::map<int, ComplexMatrix> w;
    for (int k = k_min; k <= k_max; ++k) w.emplace(k, ComplexMatrix::zero(m, m));
    return derive(w);
}

} // namespace cmv::testing
