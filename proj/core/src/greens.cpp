#include "cmv/greens.hpp"

#include <cmath>

namespace cmv {

ComplexMatrix wronskian_values(const ComplexMatrix& u1, const ComplexMatrix& v1,
                               const ComplexMatrix& u2, const ComplexMatrix& v2, int k) {
    const double sign = (k % 2 != 0) ? 1.0 : -1.0; // (-1)^{k+1}
    return (0.5 * sign) * (u1.adjoint() * u2 - v1.adjoint() * v2);
}

ComplexMatrix wronskian(const MatrixLaurentPolynomial& u1, const MatrixLaurentPolynomial& v1,
                        const MatrixLaurentPolynomial& u2, const MatrixLaurentPolynomial& v2,
                        int k, complex z) {
    const complex zr = 1.0 / std::conj(z);
    return wronskian_values(u1.eval(zr), v1.eval(zr), u2.eval(z), v2.eval(z), k);
}

WeylFunction wronskian_W(const WeylFunction& m_plus, const WeylFunction& m_minus) {
    WeylFunction w;
    w.kind = WeylKind::M_plus; // carries no discipline of its own
    w.k0 = m_plus.k0;
    w.series = m_plus.series - m_minus.series;
    if (m_plus.has_eval() && m_minus.has_eval())
        w.eval = [p = m_plus.eval, q = m_minus.eval](complex z) { return p(z) - q(z); };
    return w;
}

double wronskian_symmetry_residual(const WeylFunction& m_plus, const WeylFunction& m_minus,
                                   complex z) {
    const ComplexMatrix mp = m_plus(z), mm = m_minus(z);
    const ComplexMatrix w = mp - mm;
    const ComplexMatrix winv = inverse(w);
    return (mp * winv * mm - mm * winv * mp).frobenius_norm();
}

GreensEvaluator::GreensEvaluator(const VerblunskyData& data, int k0, int range_lo, int range_hi)
    : k0_(k0), m_(data.m()), data_(&data) {
    const CMVOperator up = half_lattice(data, k0, Side::plus);
    const CMVOperator um = half_lattice(data, k0, Side::minus);
    auto mu_p = std::make_shared<SpectralMeasure>(measure_from_operator(up, k0));
    auto mu_m = std::make_shared<SpectralMeasure>(measure_from_operator(um, k0));
    const int order = 4; // series side rarely used here; evaluators drive it
    mp_ = convert(m_from_measure(mu_p, Side::plus, k0, order), WeylKind::M_plus);
    mm_ = convert(m_from_measure(mu_m, Side::minus, k0, order), WeylKind::M_minus);
    pr_ = generate_pair(data, k0, Side::plus, false, range_lo, range_hi);
    qs_ = generate_pair(data, k0, Side::plus, true, range_lo, range_hi);
}

ComplexMatrix GreensEvaluator::weyl_value(Side side, complex z, int k) const {
    const ComplexMatrix mv = (side == Side::plus) ? mp_(z) : mm_(z);
    return qs_.first.at(k).eval(z) + pr_.first.at(k).eval(z) * mv;
}

ComplexMatrix GreensEvaluator::weyl_aux_value(Side side, complex z, int k) const {
    const ComplexMatrix mv = (side == Side::plus) ? mp_(z) : mm_(z);
    return qs_.second.at(k).eval(z) + pr_.second.at(k).eval(z) * mv;
}

WeylSolutionPair GreensEvaluator::weyl_solution(Side side, complex z) const {
    WeylSolutionPair out;
    out.k0 = k0_;
    out.side = side;
    out.z = z;
    const ComplexMatrix mv = (side == Side::plus) ? mp_(z) : mm_(z);
    for (const auto& [k, p] : pr_.first) {
        out.U[k] = qs_.first.at(k).eval(z) + p.eval(z) * mv;
        out.V[k] = qs_.second.at(k).eval(z) + pr_.second.at(k).eval(z) * mv;
    }
    return out;
}

ComplexMatrix GreensEvaluator::wronskian_matrix(complex z) const {
    const ComplexMatrix w = mp_(z) - mm_(z);
    if (condition_estimate(w) > 1e12)
        fail(errc::singular_wronskian, "W(z,k0) numerically singular");
    return w;
}

ComplexMatrix GreensEvaluator::resolvent(complex z, int k, int kp) const {
    if (std::abs(z) < 1e-300) fail(errc::zero_argument, "pointwise resolvent needs z != 0");
    const ComplexMatrix w = wronskian_matrix(z);
    const complex zr = 1.0 / std::conj(z);
    const bool lower = (k > kp) || (k == kp && kp % 2 == 0);
    ComplexMatrix left, right;
    if (lower) {
        left = weyl_value(Side::plus, z, k);
        right = weyl_value(Side::minus, zr, kp).adjoint();
    } else {
        left = weyl_value(Side::minus, z, k);
        right = weyl_value(Side::plus, zr, kp).adjoint();
    }
    return (0.5 / z) * (left * solve(w, right));
}

ComplexMatrix GreensEvaluator::diagonal_entry(complex z, int k) const {
    if (k != k0_) fail(errc::out_of_window, "closed-form diagonal entry anchored at k0");
    const ComplexMatrix mp = mp_(z), mm = mm_(z);
    const ComplexMatrix w = mp - mm;
    const ComplexMatrix id = ComplexMatrix::identity(m_);
    ComplexMatrix v;
    if (k % 2 != 0)
        v = (id + mm) * solve(w, id - mp);
    else
        v = (id - mp) * solve(w, id + mm);
    return (0.5 / z) * v;
}

ComplexMatrix GreensEvaluator::off_diagonal_up(complex z, int k) const {
    if (k != k0_) fail(errc::out_of_window, "closed-form entry anchored at k0");
    const ComplexMatrix mp = mp_(z), mm = mm_(z);
    const ComplexMatrix w = mp - mm;
    const ComplexMatrix id = ComplexMatrix::identity(m_);
    const ComplexMatrix a = data_->a(k), b = data_->b(k);
    ComplexMatrix v;
    if (k % 2 != 0)
        v = data_->rho_inv(k) * (a.adjoint() - b.adjoint() * mm) * solve(w, id - mp);
    else
        v = data_->rho_tilde_inv(k) * (a + b * mm) * solve(w, id + mp);
    return (-0.5 / z) * v;
}

ComplexMatrix GreensEvaluator::off_diagonal_down(complex z, int k) const {
    if (k != k0_) fail(errc::out_of_window, "closed-form entry anchored at k0");
    const ComplexMatrix mp = mp_(z), mm = mm_(z);
    const ComplexMatrix w = mp - mm;
    const ComplexMatrix id = ComplexMatrix::identity(m_);
    const ComplexMatrix a = data_->a(k), b = data_->b(k);
    ComplexMatrix v;
    if (k % 2 != 0)
        v = (id + mp) * solve(w, (a + mm * b) * data_->rho_inv(k));
    else
        v = (id - mp) * solve(w, (a.adjoint() - mm * b.adjoint()) * data_->rho_tilde_inv(k));
    return (-0.5 / z) * v;
}

GreensData greens_series(const VerblunskyData& data, int k0, int order) {
    const int radius = std::min(k0 - data.k_min(), data.k_max() - k0);
    if (radius < 2 * (order + 2))
        fail(errc::window_too_narrow, "greens_series needs window radius >= 2(N+2)");
    const CMVOperator op = build_cmv(data, true, true);
    const int n = op.dim(), m = op.m;
    // Column blocks k0 and k0-1 of successive powers of U^{-1} = U*.
    const ComplexMatrix ustar = op.U.adjoint();
    ComplexMatrix col_k0 = ComplexMatrix::zero(n, m);
    ComplexMatrix col_k0m1 = ComplexMatrix::zero(n, m);
    col_k0.set_block(op.row_of(k0), 0, ComplexMatrix::identity(m));
    col_k0m1.set_block(op.row_of(k0 - 1), 0, ComplexMatrix::identity(m));
    GreensData out;
    out.k0 = k0;
    out.g = MatrixPowerSeries(m, order);
    out.h = MatrixPowerSeries(m, order);
    const bool odd = (k0 % 2 != 0);
    for (int j = 0; j <= order; ++j) {
        col_k0 = ustar * col_k0;
        if (!odd) col_k0m1 = ustar * col_k0m1;
        out.g.coeff(j) = col_k0.block(op.row_of(k0), 0, m, m);
        if (odd)
            out.h.coeff(j) = col_k0.block(op.row_of(k0 - 1), 0, m, m);
        else
            out.h.coeff(j) = col_k0m1.block(op.row_of(k0), 0, m, m);
    }
    return out;
}

WeylFunction M_plus_series_from_data(const VerblunskyData& data, int k0, int order) {
    WeylFunction phi;
    phi.kind = WeylKind::Phi_plus;
    phi.k0 = k0;
    phi.series = phi_plus_series(data, k0, order);
    return convert(phi, WeylKind::M_plus);
}

WeylFunction M_minus_series_from_data(const VerblunskyData& data, int k0, int order) {
    WeylFunction psi;
    psi.kind = WeylKind::Phi_minus_inv;
    psi.k0 = k0;
    psi.series = phi_minus_inv_series(data, k0, order);
    return convert(psi, WeylKind::M_minus);
}

GreensData greens_series_closed(const VerblunskyData& data, int k0, int order) {
    const int n1 = order + 1;
    const MatrixPowerSeries mp = M_plus_series_from_data(data, k0, n1).series;
    const MatrixPowerSeries mm = M_minus_series_from_data(data, k0, n1).series;
    const MatrixPowerSeries w_inv = invert(mp - mm);
    const MatrixPowerSeries id = MatrixPowerSeries::identity(data.m(), n1);
    const bool odd = (k0 % 2 != 0);
    MatrixPowerSeries g_bracket =
        odd ? (id + mm) * w_inv * (id - mp) : (id - mp) * w_inv * (id + mm);
    MatrixPowerSeries h_bracket =
        odd ? data.rho_inv(k0) * ((MatrixPowerSeries::constant(data.a(k0).adjoint(), n1) -
                                   MatrixPowerSeries::constant(data.b(k0).adjoint(), n1) * mm) *
                                  (w_inv * (id - mp)))
            : ((id - mp) * w_inv) * (MatrixPowerSeries::constant(data.a(k0).adjoint(), n1) -
                                     mm * MatrixPowerSeries::constant(data.b(k0).adjoint(), n1)) *
                  data.rho_tilde_inv(k0);
    GreensData out;
    out.k0 = k0;
    out.g = 0.5 * complex(1.0) * shift_down(g_bracket);
    out.h = complex(-0.5) * shift_down(h_bracket);
    return out;
}

namespace {

WeylFunction make_block(WeylKind kind, int k0, MatrixPowerSeries s) {
    WeylFunction f;
    f.kind = kind;
    f.k0 = k0;
    f.series = std::move(s);
    return f;
}

} // namespace

MMatrixBlocks m_matrix_series(const VerblunskyData& data, int k0, int order) {
    const MatrixPowerSeries mp = M_plus_series_from_data(data, k0, order).series;
    const MatrixPowerSeries mm = M_minus_series_from_data(data, k0, order).series;
    const MatrixPowerSeries w_inv = invert(mp - mm);
    const MatrixPowerSeries id = MatrixPowerSeries::identity(data.m(), order);
    const bool odd = (k0 % 2 != 0);
    const MatrixPowerSeries a = MatrixPowerSeries::constant(data.a(k0), order);
    const MatrixPowerSeries as = MatrixPowerSeries::constant(data.a(k0).adjoint(), order);
    const MatrixPowerSeries b = MatrixPowerSeries::constant(data.b(k0), order);
    const MatrixPowerSeries bs = MatrixPowerSeries::constant(data.b(k0).adjoint(), order);
    const ComplexMatrix ri = data.rho_inv(k0), rti = data.rho_tilde_inv(k0);

    MMatrixBlocks out;
    if (odd) {
        out.m00 = make_block(WeylKind::M_00, k0,
                             id + ri * ((as - bs * mp) * w_inv * (a + mm * b)) * ri);
        out.m11 = make_block(WeylKind::M_11, k0, id + (id + mm) * w_inv * (id - mp));
        out.m01 = make_block(WeylKind::M_01, k0,
                             complex(-1.0) * (ri * ((as - bs * mm) * w_inv * (id - mp))));
        out.m10 = make_block(WeylKind::M_10, k0,
                             complex(-1.0) * ((id + mp) * w_inv * ((a + mm * b) * ri)));
    } else {
        out.m00 = make_block(WeylKind::M_00, k0,
                             id + rti * ((a + b * mm) * w_inv * (as - mp * bs)) * rti);
        out.m11 = make_block(WeylKind::M_11, k0, id + (id - mp) * w_inv * (id + mm));
        out.m01 = make_block(WeylKind::M_01, k0,
                             complex(-1.0) * (rti * ((a + b * mm) * w_inv * (id + mp))));
        out.m10 = make_block(WeylKind::M_10, k0,
                             complex(-1.0) * ((id - mp) * w_inv * ((as - mm * bs) * rti)));
    }
    out.phi11 = make_block(WeylKind::Phi_11, k0, cayley_to_schur(out.m11.series));
    return out;
}

MMatrixBlocks m_matrix_point(const GreensEvaluator& ev, complex z) {
    const int k0 = ev.k0();
    const ComplexMatrix g = ev.diagonal_entry(z, k0);
    const ComplexMatrix up = ev.off_diagonal_up(z, k0);
    const ComplexMatrix down = ev.off_diagonal_down(z, k0);
    const int m = g.rows();
    const ComplexMatrix id = ComplexMatrix::identity(m);
    // M blocks = I delta + 2z * resolvent entries (the (k0-1, k0) pair).
    MMatrixBlocks out;
    auto wrap = [&](WeylKind kind, const ComplexMatrix& v) {
        WeylFunction f;
        f.kind = kind;
        f.k0 = k0;
        f.series = MatrixPowerSeries::constant(v, 0);
        return f;
    };
    const complex s = 2.0 * z;
    out.m11 = wrap(WeylKind::M_11, id + s * g);
    out.m01 = wrap(WeylKind::M_01, s * up);
    out.m10 = wrap(WeylKind::M_10, s * down);
    // (k0-1, k0-1): one full resolvent evaluation.
    out.m00 = wrap(WeylKind::M_00, id + s * ev.resolvent(z, k0 - 1, k0 - 1));
    const ComplexMatrix m11v = id + s * g;
    out.phi11 = wrap(WeylKind::Phi_11, solve((m11v + id).transpose(), (m11v - id).transpose()).transpose());
    return out;
}

} // namespace cmv
