#include "cmv/weyl.hpp"

#include <cmath>
#include <limits>

namespace cmv {

const char* weyl_kind_name(WeylKind k) {
    switch (k) {
        case WeylKind::m_plus: return "m_plus";
        case WeylKind::m_minus: return "m_minus";
        case WeylKind::M_plus: return "M_plus";
        case WeylKind::M_minus: return "M_minus";
        case WeylKind::Phi_plus: return "Phi_plus";
        case WeylKind::Phi_minus_inv: return "Phi_minus_inv";
        case WeylKind::M_00: return "M_00";
        case WeylKind::M_11: return "M_11";
        case WeylKind::M_01: return "M_01";
        case WeylKind::M_10: return "M_10";
        case WeylKind::Phi_11: return "Phi_11";
    }
    return "unknown";
}

ComplexMatrix WeylFunction::operator()(complex z) const {
    if (eval) return eval(z);
    return series.eval(z);
}

namespace {

ComplexMatrix right_divide(const ComplexMatrix& a, const ComplexMatrix& b) {
    // a b^{-1} via the transposed system b^T x = a^T.
    return solve(b.transpose(), a.transpose()).transpose();
}

bool is_schur_kind(WeylKind k) {
    return k == WeylKind::Phi_plus || k == WeylKind::Phi_minus_inv || k == WeylKind::Phi_11;
}

bool is_anti_kind(WeylKind k) { return k == WeylKind::m_minus || k == WeylKind::M_minus; }

} // namespace

MatrixPowerSeries phi_plus_series(const VerblunskyData& data, int k, int order) {
    if (!data.contains(k) || !data.contains(k + order + 1))
        fail(errc::out_of_window, "phi_plus_series needs the window to cover [k, k+N+1]");
    const int m = data.m();
    // phi[s - k][j]: coefficient j at site s; site s is needed to order N - (s - k).
    std::vector<std::vector<ComplexMatrix>> phi(
        static_cast<size_t>(order), std::vector<ComplexMatrix>(static_cast<size_t>(order) + 1,
                                                               ComplexMatrix::zero(m, m)));
    for (int j = 1; j <= order; ++j) {
        for (int off = 0; off + j <= order; ++off) {
            const int s = k + off;
            const ComplexMatrix& rho = data.rho(s + 1);
            const ComplexMatrix& rti = data.rho_tilde_inv(s + 1);
            const ComplexMatrix& al = data.alpha(s + 1);
            ComplexMatrix c;
            if (j == 1) {
                c = -al.adjoint();
            } else {
                c = rho * phi[off + 1][j - 1] * rti;
                for (int l = 1; l <= j - 1; ++l)
                    c += rho * phi[off + 1][j - l] * rti * al * phi[off][l];
            }
            phi[off][j] = std::move(c);
        }
    }
    MatrixPowerSeries out(m, order);
    for (int j = 1; j <= order; ++j) out.coeff(j) = phi[0][j];
    return out;
}

MatrixPowerSeries phi_minus_inv_series(const VerblunskyData& data, int k, int order) {
    if (!data.contains(k) || !data.contains(k - order - 1))
        fail(errc::out_of_window, "phi_minus_inv_series needs the window to cover [k-N-1, k]");
    const int m = data.m();
    // psi[off][j]: coefficient j at site k - off, needed to order N - off.
    std::vector<std::vector<ComplexMatrix>> psi(
        static_cast<size_t>(order) + 1, std::vector<ComplexMatrix>(static_cast<size_t>(order) + 1,
                                                                   ComplexMatrix::zero(m, m)));
    for (int off = 0; off <= order; ++off) psi[off][0] = data.alpha(k - off);
    for (int j = 1; j <= order; ++j) {
        for (int off = 0; off + j <= order; ++off) {
            const int s = k - off;
            const ComplexMatrix& rho = data.rho(s);
            const ComplexMatrix& ri = data.rho_inv(s);
            const ComplexMatrix& rti = data.rho_tilde_inv(s);
            const ComplexMatrix als = data.alpha(s).adjoint();
            ComplexMatrix c = rti * psi[off + 1][j - 1];
            for (int l = 0; l <= j - 1; ++l) c -= psi[off][j - 1 - l] * ri * als * psi[off + 1][l];
            psi[off][j] = c * rho;
        }
    }
    MatrixPowerSeries out(m, order);
    for (int j = 0; j <= order; ++j) out.coeff(j) = psi[0][j];
    return out;
}

MatrixPowerSeries cayley_to_schur(const MatrixPowerSeries& f) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(f.m(), f.order());
    return (f - id) * invert(f + id);
}

MatrixPowerSeries cayley_from_schur(const MatrixPowerSeries& s) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(s.m(), s.order());
    return invert(id - s) * (id + s);
}

namespace {

// Primitive series edges of the conversion graph. Each returns the target
// series from the source series; evaluator edges mirror them pointwise.

MatrixPowerSeries series_M_minus_to_psi(const MatrixPowerSeries& f) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(f.m(), f.order());
    return (f + id) * invert(f - id);
}

MatrixPowerSeries series_psi_to_M_minus(const MatrixPowerSeries& psi) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(psi.m(), psi.order());
    return invert(psi - id) * (psi + id);
}

MatrixPowerSeries series_m_minus_to_psi(const MatrixPowerSeries& f) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(f.m(), f.order());
    // z Psi = (I + m)(I - m)^{-1}; the constant term vanishes since m(0) = -I.
    return shift_down((id + f) * invert(id - f));
}

MatrixPowerSeries series_psi_to_m_minus(const MatrixPowerSeries& psi) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(psi.m(), psi.order());
    const MatrixPowerSeries z_psi = shift_up(psi);
    return invert(z_psi + id) * (z_psi - id);
}

MatrixPowerSeries series_m_minus_to_M_minus(const MatrixPowerSeries& f) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(f.m(), f.order());
    const MatrixPowerSeries num = id + shift_up(id) + f - shift_up(f);
    const MatrixPowerSeries den = id - shift_up(id) + f + shift_up(f);
    return shift_down(num) * invert(shift_down(den));
}

MatrixPowerSeries series_M_minus_to_m_minus(const MatrixPowerSeries& f) {
    const MatrixPowerSeries id = MatrixPowerSeries::identity(f.m(), f.order());
    const MatrixPowerSeries lhs = f + shift_up(f) - id + shift_up(id);
    const MatrixPowerSeries rhs = id + shift_up(id) - f + shift_up(f);
    return invert(lhs) * rhs;
}

ComplexMatrix point_cayley_to_schur(const ComplexMatrix& v) {
    const ComplexMatrix id = ComplexMatrix::identity(v.rows());
    return right_divide(v - id, v + id);
}

ComplexMatrix point_cayley_from_schur(const ComplexMatrix& s) {
    const ComplexMatrix id = ComplexMatrix::identity(s.rows());
    return solve(id - s, id + s);
}

ComplexMatrix point_M_minus_to_psi(const ComplexMatrix& v) {
    const ComplexMatrix id = ComplexMatrix::identity(v.rows());
    return right_divide(v + id, v - id);
}

ComplexMatrix point_psi_to_M_minus(const ComplexMatrix& psi) {
    const ComplexMatrix id = ComplexMatrix::identity(psi.rows());
    return solve(psi - id, psi + id);
}

ComplexMatrix point_m_minus_to_psi(const ComplexMatrix& v, complex z) {
    const ComplexMatrix id = ComplexMatrix::identity(v.rows());
    return (1.0 / z) * right_divide(id + v, id - v);
}

ComplexMatrix point_psi_to_m_minus(const ComplexMatrix& psi, complex z) {
    const ComplexMatrix id = ComplexMatrix::identity(psi.rows());
    return solve(z * psi + id, z * psi - id);
}

ComplexMatrix point_m_minus_to_M_minus(const ComplexMatrix& v, complex z) {
    const ComplexMatrix id = ComplexMatrix::identity(v.rows());
    return right_divide((1.0 + z) * id + (1.0 - z) * v, (1.0 - z) * id + (1.0 + z) * v);
}

ComplexMatrix point_M_minus_to_m_minus(const ComplexMatrix& v, complex z) {
    const ComplexMatrix id = ComplexMatrix::identity(v.rows());
    return solve((1.0 + z) * v - (1.0 - z) * id, (1.0 + z) * id - (1.0 - z) * v);
}

bool plus_side_kind(WeylKind k) {
    return k == WeylKind::m_plus || k == WeylKind::M_plus || k == WeylKind::Phi_plus;
}

bool minus_side_kind(WeylKind k) {
    return k == WeylKind::m_minus || k == WeylKind::M_minus || k == WeylKind::Phi_minus_inv;
}

} // namespace

WeylFunction convert(const WeylFunction& f, WeylKind to, const ComplexMatrix* alpha_k0) {
    WeylFunction out;
    out.k0 = f.k0;
    out.kind = to;
    out.measure = f.measure;
    if (f.kind == to) {
        out.series = f.series;
        out.eval = f.eval;
        return out;
    }
    const bool plus = plus_side_kind(f.kind);
    if (plus != plus_side_kind(to) || (!plus && !minus_side_kind(to)))
        fail(errc::bad_config, std::string("no conversion edge ") + weyl_kind_name(f.kind) +
                                   " -> " + weyl_kind_name(to));
    if (plus) {
        // Hub: M_plus (= m_plus).
        MatrixPowerSeries hub = (f.kind == WeylKind::Phi_plus) ? cayley_from_schur(f.series)
                                                               : f.series;
        auto hub_eval = f.eval;
        if (f.eval && f.kind == WeylKind::Phi_plus)
            hub_eval = [src = f.eval](complex z) { return point_cayley_from_schur(src(z)); };
        if (to == WeylKind::Phi_plus) {
            out.series = cayley_to_schur(hub);
            if (hub_eval)
                out.eval = [hub_eval](complex z) { return point_cayley_to_schur(hub_eval(z)); };
        } else {
            out.series = std::move(hub);
            out.eval = hub_eval;
        }
        return out;
    }
    // Minus side: m_-(., k0-1) -> M_-(., k0) when alpha_k0 is supplied.
    if (f.kind == WeylKind::m_minus && to == WeylKind::M_minus && alpha_k0) {
        const SiteCoefficients s = SiteCoefficients::from_alpha(*alpha_k0);
        const ComplexMatrix ca = s.rho_tilde_inv * (ComplexMatrix::identity(f.series.m()) + *alpha_k0);
        const ComplexMatrix cas = s.rho_inv * (ComplexMatrix::identity(f.series.m()) + alpha_k0->adjoint());
        const ComplexMatrix cb = s.rho_tilde_inv * (ComplexMatrix::identity(f.series.m()) - *alpha_k0);
        const ComplexMatrix cbs = s.rho_inv * (ComplexMatrix::identity(f.series.m()) - alpha_k0->adjoint());
        const MatrixPowerSeries num =
            MatrixPowerSeries::constant(ca + cas, f.series.order()) + (cb - cbs) * f.series;
        const MatrixPowerSeries den =
            MatrixPowerSeries::constant(ca - cas, f.series.order()) + (cb + cbs) * f.series;
        out.series = num * invert(den);
        out.k0 = f.k0 + 1;
        if (f.eval) {
            const ComplexMatrix sum_a = ca + cas, dif_b = cb - cbs, dif_a = ca - cas,
                                sum_b = cb + cbs;
            out.eval = [src = f.eval, sum_a, dif_b, dif_a, sum_b](complex z) {
                const ComplexMatrix v = src(z);
                return right_divide(sum_a + dif_b * v, dif_a + sum_b * v);
            };
        }
        return out;
    }
    // Minus side: the six directed edges between m_-, M_- and Phi_-^{-1}.
    if (f.kind == WeylKind::m_minus && to == WeylKind::M_minus) {
        out.series = series_m_minus_to_M_minus(f.series);
        if (f.eval)
            out.eval = [src = f.eval](complex z) { return point_m_minus_to_M_minus(src(z), z); };
    } else if (f.kind == WeylKind::M_minus && to == WeylKind::m_minus) {
        out.series = series_M_minus_to_m_minus(f.series);
        if (f.eval)
            out.eval = [src = f.eval](complex z) { return point_M_minus_to_m_minus(src(z), z); };
    } else if (f.kind == WeylKind::m_minus && to == WeylKind::Phi_minus_inv) {
        out.series = series_m_minus_to_psi(f.series);
        if (f.eval)
            out.eval = [src = f.eval](complex z) { return point_m_minus_to_psi(src(z), z); };
    } else if (f.kind == WeylKind::Phi_minus_inv && to == WeylKind::m_minus) {
        out.series = series_psi_to_m_minus(f.series);
        if (f.eval)
            out.eval = [src = f.eval](complex z) { return point_psi_to_m_minus(src(z), z); };
    } else if (f.kind == WeylKind::M_minus && to == WeylKind::Phi_minus_inv) {
        out.series = series_M_minus_to_psi(f.series);
        if (f.eval)
            out.eval = [src = f.eval](complex z) { return point_M_minus_to_psi(src(z)); };
    } else if (f.kind == WeylKind::Phi_minus_inv && to == WeylKind::M_minus) {
        out.series = series_psi_to_M_minus(f.series);
        if (f.eval)
            out.eval = [src = f.eval](complex z) { return point_psi_to_M_minus(src(z)); };
    } else {
        fail(errc::bad_config, "unsupported minus-side conversion");
    }
    return out;
}

ComplexMatrix m_pointwise(const SpectralMeasure& mu, Side side, complex z) {
    ComplexMatrix acc = ComplexMatrix::zero(mu.m, mu.m);
    for (const auto& a : mu.atoms) {
        if (std::abs(a.node - z) < 1e-12) fail(errc::node_collision, "z collides with an atom");
        acc += ((a.node + z) / (a.node - z)) * a.weight;
    }
    if (side == Side::minus) acc = -acc;
    return acc;
}

WeylFunction m_from_measure(std::shared_ptr<const SpectralMeasure> mu, Side side, int k0,
                            int order) {
    WeylFunction f;
    f.kind = (side == Side::plus) ? WeylKind::m_plus : WeylKind::m_minus;
    f.k0 = k0;
    f.measure = mu;
    const double sign = (side == Side::plus) ? 1.0 : -1.0;
    const std::vector<ComplexMatrix> mus = moments(*mu, std::max(order, 0));
    f.series = MatrixPowerSeries(mu->m, order);
    f.series.coeff(0) = sign * ComplexMatrix::identity(mu->m);
    for (int j = 1; j <= order; ++j) f.series.coeff(j) = (2.0 * sign) * mus[j].adjoint();
    f.eval = [mu, side](complex z) { return m_pointwise(*mu, side, z); };
    return f;
}

std::vector<complex> caratheodory_grid() {
    std::vector<complex> g;
    for (double r : {0.3, 0.6, 0.9})
        for (int j = 0; j < 16; ++j) g.push_back(std::polar(r, 2.0 * M_PI * (j + 0.25) / 16.0));
    return g;
}

CaratheodoryReport caratheodory_tools(const WeylFunction& f) {
    CaratheodoryReport rep{};
    rep.min_real_part_eigenvalue = std::numeric_limits<double>::quiet_NaN();
    rep.max_schur_norm = std::numeric_limits<double>::quiet_NaN();
    rep.herglotz_residual = std::numeric_limits<double>::quiet_NaN();
    rep.reflection_residual = std::numeric_limits<double>::quiet_NaN();
    rep.caratheodory_ok = true;
    rep.schur_ok = true;
    const double flip = is_anti_kind(f.kind) ? -1.0 : 1.0;
    double min_eig = std::numeric_limits<double>::infinity();
    double max_norm = 0.0;
    for (complex z : caratheodory_grid()) {
        ComplexMatrix v;
        try {
            v = f(z);
        } catch (const error&) {
            continue; // diagnostics never throw
        }
        if (is_schur_kind(f.kind)) {
            max_norm = std::max(max_norm, op_norm(v));
        } else {
            const ComplexMatrix re = 0.5 * flip * (v + v.adjoint());
            const HermitianEigen eg = herm_eigen(re, 1e-6);
            min_eig = std::min(min_eig, eg.values.front());
        }
    }
    if (is_schur_kind(f.kind)) {
        rep.max_schur_norm = max_norm;
        rep.schur_ok = max_norm <= 1.0 + 1e-9;
    } else {
        rep.min_real_part_eigenvalue = min_eig;
        rep.caratheodory_ok = min_eig >= -1e-9;
    }
    if (f.measure && f.has_eval() && !is_schur_kind(f.kind)) {
        // Herglotz representation residual with C = Im F(0).
        const ComplexMatrix f0 = f(complex(0.0));
        const ComplexMatrix c = (f0 - f0.adjoint()) * complex(0.0, -0.5);
        double worst = 0.0;
        for (complex z : {complex(0.4, 0.1), complex(-0.2, 0.5), complex(0.05, -0.6)}) {
            const ComplexMatrix lhs = f(z);
            ComplexMatrix rhs = complex(0.0, 1.0) * c;
            for (const auto& a : f.measure->atoms)
                rhs += (flip * (a.node + z) / (a.node - z)) * a.weight;
            worst = std::max(worst, (lhs - rhs).frobenius_norm());
        }
        rep.herglotz_residual = worst;
    }
    if (f.has_eval() && !is_schur_kind(f.kind)) {
        double worst = 0.0;
        bool any = false;
        for (complex z : {complex(2.0, 0.0), complex(0.0, 3.0), complex(-1.5, 1.1)}) {
            try {
                const ComplexMatrix lhs = f(z);
                const ComplexMatrix rhs = -f(1.0 / std::conj(z)).adjoint();
                worst = std::max(worst, (lhs - rhs).frobenius_norm());
                any = true;
            } catch (const error&) {
            }
        }
        if (any) rep.reflection_residual = worst;
    }
    return rep;
}

WeylFunction schur_cayley(const WeylFunction& f) {
    WeylFunction out;
    out.k0 = f.k0;
    out.measure = f.measure;
    switch (f.kind) {
        case WeylKind::m_plus:
        case WeylKind::M_plus:
            return convert(f, WeylKind::Phi_plus);
        case WeylKind::m_minus:
        case WeylKind::M_minus:
            return convert(f, WeylKind::Phi_minus_inv);
        case WeylKind::Phi_plus:
            return convert(f, WeylKind::M_plus);
        case WeylKind::Phi_minus_inv:
            return convert(f, WeylKind::M_minus);
        case WeylKind::M_00:
        case WeylKind::M_11:
            out.kind = WeylKind::Phi_11;
            out.series = cayley_to_schur(f.series);
            if (f.eval) out.eval = [src = f.eval](complex z) { return point_cayley_to_schur(src(z)); };
            return out;
        case WeylKind::Phi_11:
            out.kind = WeylKind::M_11;
            out.series = cayley_from_schur(f.series);
            if (f.eval)
                out.eval = [src = f.eval](complex z) { return point_cayley_from_schur(src(z)); };
            return out;
        default:
            fail(errc::bad_config, "schur_cayley has no edge for this kind");
    }
}

} // namespace cmv
