#include "cmv/sampling.hpp"

#include <random>

namespace cmv {

namespace {

ComplexMatrix gaussian_matrix(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = complex(re, im);
        }
    return g;
}

} // namespace

ComplexMatrix sample_contraction(int m, double target_norm, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ComplexMatrix g = gaussian_matrix(m, rng);
    const double n = op_norm(g);
    if (n == 0.0) return ComplexMatrix::zero(m, m);
    return (target_norm / n) * g;
}

VerblunskyData sample_verblunsky(int m, int window, int k_min, double norm_cap,
                                 std::uint64_t seed) {
    if (m <= 0 || window < 2) fail(errc::bad_config, "need m >= 1 and window >= 2");
    if (!(norm_cap > 0.0) || norm_cap >= 1.0)
        fail(errc::bad_config, "norm_cap must lie in (0, 1)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::map<int, ComplexMatrix> alphas;
    for (int k = k_min; k < k_min + window; ++k) {
        ComplexMatrix g = gaussian_matrix(m, rng);
        const double n = op_norm(g);
        // Uniform in (0, norm_cap]: reject the measure-zero corner at 0.
        double t = norm_cap * (1.0 - uni(rng));
        if (t == 0.0) t = norm_cap;
        alphas.emplace(k, (n == 0.0) ? ComplexMatrix::zero(m, m) : (t / n) * g);
    }
    return derive(alphas);
}

} // namespace cmv
