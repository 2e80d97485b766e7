#include "cmv/spectral.hpp"

#include <cmath>

namespace cmv {

ComplexMatrix SpectralMeasure::total_weight() const {
    ComplexMatrix t = ComplexMatrix::zero(m, m);
    for (const auto& a : atoms) t += a.weight;
    return t;
}

namespace {

// Groups eigen-nodes within `node_tol`, forming one PSD weight per cluster
// from the block rows [r0, r0 + rows) of the eigenvector matrix.
template <typename MeasureT>
MeasureT collect_atoms(const UnitaryEigen& eg, int r0, int rows, int m_out) {
    MeasureT mu;
    mu.m = m_out;
    const int n = eg.vectors.rows();
    const double node_tol = 1e-12;
    std::vector<bool> used(eg.nodes.size(), false);
    for (size_t j = 0; j < eg.nodes.size(); ++j) {
        if (used[j]) continue;
        std::vector<int> cluster{static_cast<int>(j)};
        used[j] = true;
        for (size_t l = j + 1; l < eg.nodes.size(); ++l)
            if (!used[l] && std::abs(eg.nodes[l] - eg.nodes[j]) < node_tol) {
                used[l] = true;
                cluster.push_back(static_cast<int>(l));
            }
        ComplexMatrix b(rows, static_cast<int>(cluster.size()));
        for (int c = 0; c < static_cast<int>(cluster.size()); ++c)
            for (int r = 0; r < rows; ++r) b(r, c) = eg.vectors(r0 + r, cluster[c]);
        ComplexMatrix w = b * b.adjoint();
        // Hermitian symmetrization absorbs the multiply roundoff.
        ComplexMatrix wh(rows, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < rows; ++c) wh(r, c) = 0.5 * (w(r, c) + std::conj(w(c, r)));
        if (wh.frobenius_norm() < 1e-14) continue;
        (void)n;
        mu.atoms.push_back({eg.nodes[j], std::move(wh)});
    }
    return mu;
}

} // namespace

SpectralMeasure measure_from_operator(const CMVOperator& op, int k0) {
    if (k0 < op.site_min || k0 > op.site_max)
        fail(errc::out_of_window, "measure anchor outside operator sites");
    const UnitaryEigen eg = unitary_eigen(op.U);
    return collect_atoms<SpectralMeasure>(eg, op.row_of(k0), op.m, op.m);
}

BlockSpectralMeasure block_measure(const CMVOperator& op, int k0) {
    if (k0 - 1 < op.site_min || k0 > op.site_max)
        fail(errc::out_of_window, "block measure needs sites k0-1 and k0 inside the window");
    const UnitaryEigen eg = unitary_eigen(op.U);
    return collect_atoms<BlockSpectralMeasure>(eg, op.row_of(k0 - 1), 2 * op.m, op.m);
}

std::vector<ComplexMatrix> moments(const SpectralMeasure& mu, int k_max) {
    if (k_max < 0) fail(errc::bad_config, "moments needs k_max >= 0");
    std::vector<ComplexMatrix> out(static_cast<size_t>(k_max) + 1, ComplexMatrix::zero(mu.m, mu.m));
    for (const auto& a : mu.atoms) {
        complex p = 1.0;
        for (int j = 0; j <= k_max; ++j) {
            out[j] += p * a.weight;
            p *= a.node;
        }
    }
    return out;
}

MomentFunctional::MomentFunctional(int m, std::vector<ComplexMatrix> nonneg_moments)
    : m_(m), mu_(std::move(nonneg_moments)) {
    if (mu_.empty()) fail(errc::bad_config, "moment table must contain mu_0");
}

MomentFunctional MomentFunctional::from_measure(const SpectralMeasure& mu, int depth_hint) {
    return MomentFunctional(mu.m, moments(mu, std::max(2 * depth_hint + 4, 4)));
}

ComplexMatrix MomentFunctional::moment(int j) const {
    const int a = std::abs(j);
    if (a >= static_cast<int>(mu_.size())) return ComplexMatrix::zero(m_, m_);
    return j >= 0 ? mu_[a] : mu_[a].adjoint();
}

ComplexMatrix MomentFunctional::pair(const MatrixLaurentPolynomial& f,
                                     const MatrixLaurentPolynomial& g) const {
    ComplexMatrix out = ComplexMatrix::zero(m_, m_);
    for (const auto& [ef, cf] : f.coeffs())
        for (const auto& [eg_, cg] : g.coeffs()) out += cf * moment(ef - eg_) * cg.adjoint();
    return out;
}

double orthonormality_check(const SpectralMeasure& mu, const SolutionFamily& fam, int depth) {
    if (fam.kind != Kind::P && fam.kind != Kind::R)
        fail(errc::bad_config, "orthonormality check applies to first-kind families");
    const int dir = (fam.side == Side::plus) ? 1 : -1;
    double worst = 0.0;
    for (int i = 0; i <= depth; ++i) {
        for (int j = 0; j <= depth; ++j) {
            const MatrixLaurentPolynomial& f = fam.at(fam.k0 + dir * i);
            const MatrixLaurentPolynomial& g = fam.at(fam.k0 + dir * j);
            ComplexMatrix acc = ComplexMatrix::zero(mu.m, mu.m);
            for (const auto& a : mu.atoms) acc += f.eval(a.node) * a.weight * g.eval(a.node).adjoint();
            if (i == j) acc -= ComplexMatrix::identity(mu.m);
            worst = std::max(worst, acc.frobenius_norm());
        }
    }
    return worst;
}

SzegoResult szego_recursion(const MomentFunctional& fn, int k0, Side side, int depth) {
    const int m = fn.m();
    SzegoResult out;
    out.family.k0 = k0;
    out.family.side = side;
    out.family.second_kind = false;
    out.family.m = m;
    PolyPair cur = seed_pair(m, k0, side, false);
    out.family.first[k0] = cur.u;
    out.family.second[k0] = cur.v;
    for (int step = 1; step <= depth; ++step) {
        // The site whose transfer step is about to be taken; its alpha is
        // pinned by orthogonality of the neighboring family members.
        const int k = (side == Side::plus) ? k0 + step : k0 - step + 1;
        ComplexMatrix alpha;
        if (side == Side::plus) {
            if (k % 2 != 0)
                alpha = -fn.pair(cur.v.shifted(1), cur.u); // -<zeta R(k-1), P(k-1)>
            else
                alpha = -fn.pair(cur.u, cur.v); // -<P(k-1), R(k-1)>
        } else {
            if (k % 2 != 0)
                alpha = fn.pair(cur.v.shifted(1), cur.u).adjoint(); // <zeta R(k), P(k)>*
            else
                alpha = fn.pair(cur.u, cur.v).adjoint(); // <P(k), R(k)>*
        }
        SiteCoefficients s = SiteCoefficients::from_alpha(alpha, 1e-12);
        out.alpha[k] = alpha;
        if (side == Side::plus) {
            cur = step_pair_forward(s, k, cur);
            out.family.first[k] = cur.u;
            out.family.second[k] = cur.v;
        } else {
            cur = step_pair_backward(s, k, cur);
            out.family.first[k - 1] = cur.u;
            out.family.second[k - 1] = cur.v;
        }
    }
    return out;
}

SolutionFamily gram_schmidt(const SpectralMeasure& mu, int k0, Side side, Kind kind, int depth) {
    if (kind != Kind::P && kind != Kind::R)
        fail(errc::bad_config, "gram_schmidt constructs the first-kind families P and R");
    const MomentFunctional fn = MomentFunctional::from_measure(mu, depth);
    SzegoResult r = szego_recursion(fn, k0, side, depth);
    SolutionFamily fam;
    fam.k0 = k0;
    fam.side = side;
    fam.kind = kind;
    fam.m = mu.m;
    fam.polys = (kind == Kind::P) ? std::move(r.family.first) : std::move(r.family.second);
    return fam;
}

std::map<int, ComplexMatrix> reconstruct_alpha(const MomentFunctional& fn, int k0, Side side,
                                               int depth) {
    return szego_recursion(fn, k0, side, depth).alpha;
}

std::map<int, ComplexMatrix> reconstruct_alpha(const SpectralMeasure& mu, int k0, Side side,
                                               int depth) {
    const int sites = static_cast<int>(mu.atoms.size() + mu.m - 1) / mu.m;
    if (2 * depth > sites)
        fail(errc::out_of_window,
             "reconstruction depth exceeds half the window resolved by the measure");
    const MomentFunctional fn = MomentFunctional::from_measure(mu, depth);
    return reconstruct_alpha(fn, k0, side, depth);
}

ComplexMatrix second_kind_from_measure(const SpectralMeasure& mu, const SolutionFamily& fam,
                                       complex z, int k) {
    if (fam.kind != Kind::P && fam.kind != Kind::R)
        fail(errc::bad_config, "second_kind_from_measure takes a P or R family");
    const MatrixLaurentPolynomial f = (fam.kind == Kind::P)
                                          ? modified_variant(fam.at(k), fam.k0, fam.side)
                                          : fam.at(k);
    const ComplexMatrix at_z = f.eval(z);
    ComplexMatrix acc = ComplexMatrix::zero(mu.m, mu.m);
    for (const auto& a : mu.atoms) {
        if (std::abs(a.node - z) < 1e-12) fail(errc::node_collision, "z collides with an atom");
        const complex w = (a.node + z) / (a.node - z);
        acc += w * ((f.eval(a.node) - at_z) * a.weight);
    }
    if (fam.side == Side::minus) acc = -acc;
    return acc;
}

double block_orthonormality_check(
    const BlockSpectralMeasure& bmu,
    const std::map<int, std::pair<MatrixLaurentPolynomial, MatrixLaurentPolynomial>>& basis,
    int k0, int depth) {
    const int m = bmu.m;
    auto eval_wide = [&](int k, complex z) {
        const auto& pp = basis.at(k);
        ComplexMatrix wide(m, 2 * m);
        wide.set_block(0, 0, pp.first.eval(z));
        wide.set_block(0, m, pp.second.eval(z));
        return wide;
    };
    double worst = 0.0;
    for (int k = k0 - depth; k <= k0 + depth; ++k) {
        for (int kp = k0 - depth; kp <= k0 + depth; ++kp) {
            ComplexMatrix acc = ComplexMatrix::zero(m, m);
            for (const auto& a : bmu.atoms)
                acc += eval_wide(k, a.node) * a.weight * eval_wide(kp, a.node).adjoint();
            if (k == kp) acc -= ComplexMatrix::identity(m);
            worst = std::max(worst, acc.frobenius_norm());
        }
    }
    return worst;
}

} // namespace cmv
