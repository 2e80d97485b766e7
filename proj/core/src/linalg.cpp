#include "cmv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cmv {

namespace {

// One complex Jacobi rotation annihilating a(p,q). For Hermitian input the
// 2x2 pivot block is [[app, apq], [conj(apq), aqq]] with real diagonal; the
// rotation J acts as A <- J* A J with
//   J(p,p) = c, J(p,q) = s·e^{iθ}, J(q,p) = -s·e^{-iθ}, J(q,q) = c,
// where e^{iθ} = apq/|apq| and (c, s) is the classical symmetric Jacobi pair.
struct Rotation {
    double c;
    complex s_pq;  // J(p,q)
    complex s_qp;  // J(q,p)
};

Rotation make_rotation(double app, double aqq, complex apq) {
    const double aapq = std::abs(apq);
    const complex phase = apq / aapq;
    const double tau = (aqq - app) / (2.0 * aapq);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    return Rotation{c, s * phase, -s * std::conj(phase)};
}

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

HermitianEigen herm_eigen(const ComplexMatrix& a, double tol) {
    require_square(a, "herm_eigen");
    const int n = a.rows();
    const double scale = std::max(1.0, a.frobenius_norm());
    if (hermitian_defect(a) > tol * scale)
        fail(errc::not_hermitian, "herm_eigen input is not Hermitian within tolerance");

    // Work on the symmetrized copy so roundoff in the input cannot leak into
    // the rotation formulas, which assume a real diagonal.
    ComplexMatrix w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const int max_sweeps = 64;
    const double stop = 1e-15 * std::max(1.0, w.frobenius_norm());
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_norm(w) <= stop * n) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const complex apq = w(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const Rotation r = make_rotation(w(p, p).real(), w(q, q).real(), apq);
                // Right update: columns p, q of W and V.
                for (int i = 0; i < n; ++i) {
                    const complex wip = w(i, p), wiq = w(i, q);
                    w(i, p) = r.c * wip + r.s_qp * wiq;
                    w(i, q) = r.s_pq * wip + r.c * wiq;
                    const complex vip = v(i, p), viq = v(i, q);
                    v(i, p) = r.c * vip + r.s_qp * viq;
                    v(i, q) = r.s_pq * vip + r.c * viq;
                }
                // Left update J* acting on rows p, q.
                for (int j = 0; j < n; ++j) {
                    const complex wpj = w(p, j), wqj = w(q, j);
                    w(p, j) = r.c * wpj + std::conj(r.s_qp) * wqj;
                    w(q, j) = std::conj(r.s_pq) * wpj + r.c * wqj;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
            }
        }
    }
    if (sweep == max_sweeps && off_diagonal_norm(w) > 1e-10 * std::max(1.0, scale))
        fail(errc::no_convergence, "Jacobi eigensolver did not converge in 64 sweeps");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return w(i, i).real() < w(j, j).real(); });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (int j = 0; j < n; ++j) {
        out.values[j] = w(order[j], order[j]).real();
        for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double op_norm(const ComplexMatrix& a) {
    if (a.empty()) fail(errc::shape_mismatch, "op_norm of empty matrix");
    const ComplexMatrix g = a.adjoint() * a;
    const int n = g.rows();
    if (n <= 48) {
        const HermitianEigen eg = herm_eigen(g, 1e-8);
        return std::sqrt(std::max(0.0, eg.values.back()));
    }
    // Power iteration on A*A for larger matrices; the Rayleigh quotient of a
    // Hermitian matrix converges with the square of the subspace error.
    std::vector<complex> x(n);
    for (int i = 0; i < n; ++i) x[i] = complex(1.0 + 0.3 * std::sin(1.7 * i), 0.1 * std::cos(2.3 * i));
    double lambda = 0.0;
    for (int it = 0; it < 4000; ++it) {
        std::vector<complex> y(n, complex(0.0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) y[i] += g(i, j) * x[j];
        double ny = 0.0;
        for (const auto& v : y) ny += std::norm(v);
        ny = std::sqrt(ny);
        if (ny == 0.0) return 0.0;
        double rayleigh = 0.0;
        {
            complex num = 0.0;
            double den = 0.0;
            for (int i = 0; i < n; ++i) {
                num += std::conj(x[i]) * y[i];
                den += std::norm(x[i]);
            }
            rayleigh = num.real() / den;
        }
        for (int i = 0; i < n; ++i) x[i] = y[i] / ny;
        if (it > 4 && std::abs(rayleigh - lambda) <= 1e-13 * std::max(1.0, std::abs(rayleigh))) {
            lambda = rayleigh;
            break;
        }
        lambda = rayleigh;
    }
    return std::sqrt(std::max(0.0, lambda));
}

ComplexMatrix herm_sqrt(const ComplexMatrix& a, double tol) {
    require_square(a, "herm_sqrt");
    const HermitianEigen eg = herm_eigen(a, tol);
    const int n = a.rows();
    for (double lam : eg.values)
        if (lam < -tol) fail(errc::not_psd, "herm_sqrt eigenvalue below -tol");
    ComplexMatrix d(n, n);
    for (int i = 0; i < n; ++i) d(i, i) = std::sqrt(std::max(0.0, eg.values[i]));
    return eg.vectors * d * eg.vectors.adjoint();
}

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "solve");
    if (a.rows() != b.rows()) fail(errc::shape_mismatch, "solve: row counts differ");
    const int n = a.rows(), m = b.cols();
    ComplexMatrix lu = a, x = b;
    const double pivot_floor = 1e-13 * std::max(a.max_abs(), 1e-300);
    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(lu(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best < pivot_floor) fail(errc::singular, "solve: pivot below threshold");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            for (int j = 0; j < m; ++j) std::swap(x(k, j), x(p, j));
        }
        const complex inv_piv = 1.0 / lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const complex f = lu(i, k) * inv_piv;
            if (f == complex(0.0)) continue;
            lu(i, k) = f;
            for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            for (int j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
        }
    }
    for (int k = n - 1; k >= 0; --k) {
        const complex inv_piv = 1.0 / lu(k, k);
        for (int j = 0; j < m; ++j) {
            complex s = x(k, j);
            for (int i = k + 1; i < n; ++i) s -= lu(k, i) * x(i, j);
            x(k, j) = s * inv_piv;
        }
    }
    return x;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    return solve(a, ComplexMatrix::identity(a.rows()));
}

double condition_estimate(const ComplexMatrix& a) {
    auto one_norm = [](const ComplexMatrix& m) {
        double best = 0.0;
        for (int j = 0; j < m.cols(); ++j) {
            double s = 0.0;
            for (int i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
            best = std::max(best, s);
        }
        return best;
    };
    try {
        const ComplexMatrix inv = inverse(a);
        return one_norm(a) * one_norm(inv);
    } catch (const error&) {
        return std::numeric_limits<double>::infinity();
    }
}

UnitaryEigen unitary_eigen(const ComplexMatrix& u, double tol) {
    require_square(u, "unitary_eigen");
    const int n = u.rows();
    const ComplexMatrix res = u.adjoint() * u - ComplexMatrix::identity(n);
    if (res.frobenius_norm() > tol * n)
        fail(errc::not_unitary, "unitary_eigen input fails U*U = I");

    // Deterministic low-discrepancy phase schedule; a retry only happens when
    // e^{i phi} U has an eigenvalue too close to 1 for the Cayley transform.
    for (int attempt = 0; attempt < 16; ++attempt) {
        const double phi = 2.0 * M_PI * std::fmod(0.6180339887498949 * (attempt + 1) + 0.123456789, 1.0);
        const complex rot = std::polar(1.0, phi);
        ComplexMatrix m = u;
        m *= rot;
        ComplexMatrix i_minus = ComplexMatrix::identity(n) - m;
        ComplexMatrix i_plus = ComplexMatrix::identity(n) + m;
        ComplexMatrix k;
        try {
            k = solve(i_minus, i_plus);
        } catch (const error& e) {
            if (e.code() == errc::singular) continue;
            throw;
        }
        k *= complex(0.0, 1.0);
        // Large ‖K‖ means some eigenvalue of m sits near 1; retry the phase.
        if (k.max_abs() > 1e7) continue;
        // K is Hermitian when U is unitary; symmetrize away the roundoff.
        ComplexMatrix kh(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) kh(i, j) = 0.5 * (k(i, j) + std::conj(k(j, i)));
        const HermitianEigen eg = herm_eigen(kh, 1e-6);

        UnitaryEigen out;
        out.nodes.resize(n);
        out.vectors = eg.vectors;
        for (int j = 0; j < n; ++j) {
            const complex lam(eg.values[j], 0.0);
            complex mu = (lam - complex(0.0, 1.0)) / (lam + complex(0.0, 1.0));
            complex node = mu / rot;
            node /= std::abs(node); // re-project onto the unit circle
            out.nodes[j] = node;
        }
        return out;
    }
    fail(errc::cayley_degenerate, "no Cayley phase succeeded in 16 retries");
}

} // namespace cmv
