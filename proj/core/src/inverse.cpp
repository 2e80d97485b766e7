#include "cmv/inverse.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace cmv {

namespace {

double nrm(const ComplexMatrix& a) { return op_norm(a); }

ComplexMatrix linear_inv(const RiccatiProblem& p) {
    const ComplexMatrix& lin = (p.mode == RiccatiProblem::Mode::B_invertible) ? p.B : p.C;
    try {
        return inverse(lin);
    } catch (const error&) {
        fail(errc::contraction_violated, "linear coefficient not invertible");
    }
}

} // namespace

double riccati_contraction_margin(const RiccatiProblem& p) {
    const double inv_norm = nrm(linear_inv(p));
    const double other = (p.mode == RiccatiProblem::Mode::B_invertible) ? nrm(p.C) : nrm(p.B);
    return (2.0 * std::sqrt(nrm(p.A) * nrm(p.D)) + other) * inv_norm;
}

double riccati_norm_bound(const RiccatiProblem& p) {
    const double inv_norm = nrm(linear_inv(p));
    const double other = (p.mode == RiccatiProblem::Mode::B_invertible) ? nrm(p.C) : nrm(p.B);
    const double a = nrm(p.A);
    const double level = (1.0 - other * inv_norm) / (2.0 * a * inv_norm);
    const double disc = level * level - nrm(p.D) / a;
    return level - std::sqrt(std::max(disc, 0.0));
}

RiccatiSolution riccati_solve(const RiccatiProblem& p, double tol, int max_iter) {
    if (nrm(p.A) == 0.0) fail(errc::bad_config, "riccati_solve expects A != 0");
    if (riccati_contraction_margin(p) >= 1.0)
        fail(errc::contraction_violated, "contraction condition fails");
    const ComplexMatrix inv = linear_inv(p);
    const int m = p.A.rows();
    ComplexMatrix x = ComplexMatrix::zero(m, m);
    RiccatiSolution out;
    const double scale = std::max({1.0, nrm(p.B), nrm(p.C), nrm(p.D)});
    for (int it = 1; it <= max_iter; ++it) {
        ComplexMatrix next;
        if (p.mode == RiccatiProblem::Mode::B_invertible)
            next = -(inv * (x * p.A * x + x * p.C + p.D));
        else
            next = -((x * p.A * x + p.B * x + p.D) * inv);
        const double delta = (next - x).frobenius_norm();
        x = std::move(next);
        out.max_iterate_norm = std::max(out.max_iterate_norm, nrm(x));
        out.iterations = it;
        if (delta < tol) break;
        if (it == max_iter) fail(errc::no_convergence, "riccati fixed point did not settle");
    }
    out.residual = (x * p.A * x + p.B * x + x * p.C + p.D).frobenius_norm();
    if (out.residual > 10.0 * tol * scale + 1e-12)
        fail(errc::no_convergence, "riccati residual above contract");
    out.X = std::move(x);
    return out;
}

double riccati_lambda(double a, double b) {
    const double ab = a * b;
    const double t1 = a;
    const double t2 = 2.0 * a * a * b / (1.0 - ab);
    const double t3 = a * a * b + 2.0 * std::pow(a, 3) * b * b / (1.0 - ab) +
                      4.0 * std::pow(a, 5) * b * b / ((1.0 - ab) * (1.0 - ab));
    const double t4 = 4.0 * std::pow(a, 3) * b * b / ((1.0 - ab) * (1.0 - ab));
    const double den = (1.0 - ab) - 4.0 * std::pow(a, 3) * b / (1.0 - ab);
    return std::max({t1, t2, t3, t4}) / den;
}

double riccati_perturbation_bound(const RiccatiProblem& p1, const RiccatiProblem& p2, double a,
                                  double b) {
    if (p1.mode != p2.mode) fail(errc::hypothesis_violated, "mixed Riccati modes");
    if (2.0 * a * b * (1.0 + 2.0 * a * a) > 1.0)
        fail(errc::hypothesis_violated, "2ab(1+2a^2) <= 1 fails");
    for (const RiccatiProblem* p : {&p1, &p2}) {
        const double na = nrm(p->A);
        const double ninv = nrm(linear_inv(*p));
        const double nlin_other =
            (p->mode == RiccatiProblem::Mode::B_invertible) ? nrm(p->C) : nrm(p->B);
        if (na <= 0.0 || na > a || ninv > a || nlin_other > b || nrm(p->D) > b)
            fail(errc::hypothesis_violated, "coefficient caps (a, b) violated");
    }
    const double sum = nrm(p1.A - p2.A) + nrm(p1.B - p2.B) + nrm(p1.C - p2.C) + nrm(p1.D - p2.D);
    return riccati_lambda(a, b) * sum;
}

namespace {

// Moment table of the spectral measure from the Taylor series of m_pm:
// m_pm = ±I ± 2 sum z^k (mu_k)^*.
std::vector<ComplexMatrix> moments_from_m_series(const MatrixPowerSeries& m_series, Side side) {
    const double sign = (side == Side::plus) ? 1.0 : -1.0;
    std::vector<ComplexMatrix> mu;
    mu.push_back(ComplexMatrix::identity(m_series.m()));
    for (int j = 1; j <= m_series.order(); ++j)
        mu.push_back((0.5 * sign) * m_series.coeff(j).adjoint());
    return mu;
}

MatrixPowerSeries to_m_series(const HalfLatticePayload& payload, int order) {
    const Side side = payload.side;
    switch (payload.kind) {
        case HalfLatticeDataKind::taylor_m:
            return payload.series;
        case HalfLatticeDataKind::taylor_M: {
            WeylFunction f;
            f.kind = (side == Side::plus) ? WeylKind::M_plus : WeylKind::M_minus;
            f.series = payload.series;
            if (side == Side::plus) return convert(f, WeylKind::m_plus).series;
            WeylFunction psi = convert(f, WeylKind::Phi_minus_inv);
            psi.series = psi.series.truncated(order);
            return convert(psi, WeylKind::m_minus).series;
        }
        case HalfLatticeDataKind::taylor_phi: {
            WeylFunction f;
            f.kind = (side == Side::plus) ? WeylKind::Phi_plus : WeylKind::Phi_minus_inv;
            f.series = (side == Side::plus) ? payload.series : payload.series.truncated(order);
            return convert(f, (side == Side::plus) ? WeylKind::m_plus : WeylKind::m_minus).series;
        }
        default:
            fail(errc::bad_config, "kind carries no Taylor series");
    }
}

} // namespace

std::map<int, ComplexMatrix> half_lattice_invert(const HalfLatticePayload& payload, int k0,
                                                 int order) {
    if (payload.kind == HalfLatticeDataKind::alpha) {
        std::map<int, ComplexMatrix> out;
        const int lo = (payload.side == Side::plus) ? k0 + 1 : k0 - order + 1;
        const int hi = (payload.side == Side::plus) ? k0 + order : k0;
        for (int k = lo; k <= hi; ++k) out[k] = payload.alpha.at(k);
        return out;
    }
    std::vector<ComplexMatrix> mu;
    if (payload.kind == HalfLatticeDataKind::moments) {
        mu = payload.moment_table;
        if (static_cast<int>(mu.size()) <= order)
            fail(errc::bad_config, "moment table shorter than requested order");
    } else {
        const MatrixPowerSeries m_series = to_m_series(payload, order);
        if (m_series.order() < order)
            fail(errc::bad_config, "payload order below requested reconstruction depth");
        mu = moments_from_m_series(m_series, payload.side);
    }
    const MomentFunctional fn(static_cast<int>(mu.front().rows()), std::move(mu));
    return reconstruct_alpha(fn, k0, payload.side, order);
}

void attach_reference(ReconstructionReport& rep, const VerblunskyData& data) {
    for (const auto& [k, v] : rep.recovered) {
        if (!data.contains(k)) continue;
        rep.reference[k] = data.alpha(k);
        rep.per_site_error[k] = op_norm(v - data.alpha(k));
    }
}

namespace {

ComplexMatrix inv_sqrt_of_I_plus_gram(const ComplexMatrix& g) {
    const ComplexMatrix q = ComplexMatrix::identity(g.rows()) + g.adjoint() * g;
    const HermitianEigen eg = herm_eigen(q);
    ComplexMatrix d(g.rows(), g.rows());
    for (int i = 0; i < g.rows(); ++i) d(i, i) = 1.0 / std::sqrt(eg.values[i]);
    return eg.vectors * d * eg.vectors.adjoint();
}

std::map<int, ComplexMatrix> invert_from_M_series(const MatrixPowerSeries& m_series, Side side,
                                                  WeylKind kind, int k0, int depth) {
    HalfLatticePayload payload;
    payload.kind = (kind == WeylKind::Phi_plus || kind == WeylKind::Phi_minus_inv)
                       ? HalfLatticeDataKind::taylor_phi
                       : HalfLatticeDataKind::taylor_M;
    payload.side = side;
    payload.series = m_series;
    return half_lattice_invert(payload, k0, depth);
}

} // namespace

ReconstructionReport full_lattice_invert_gh(const GreensData& gh, int order) {
    const int k0 = gh.k0;
    const int m = gh.g.coeff(0).rows();
    const bool odd = (k0 % 2 != 0);
    const ComplexMatrix g0 = gh.g.coeff(0), h0 = gh.h.coeff(0);
    ComplexMatrix h0_inv;
    try {
        h0_inv = inverse(h0);
    } catch (const error&) {
        fail(errc::h_not_invertible, "h(0,k0) singular");
    }
    if (op_norm(h0_inv) >= 1e8) fail(errc::h_not_invertible, "h(0,k0) inverse above threshold");

    const ComplexMatrix ratio = odd ? g0 * h0_inv : h0_inv * g0; // alpha rho^{-1}
    const ComplexMatrix rho = inv_sqrt_of_I_plus_gram(ratio);
    const ComplexMatrix alpha = ratio * rho;
    const SiteCoefficients site = SiteCoefficients::from_alpha(alpha);
    const ComplexMatrix bs = (ComplexMatrix::identity(m) - alpha).adjoint();

    const int n1 = order + 1;
    const MatrixPowerSeries g = gh.g.truncated(n1), h = gh.h.truncated(n1);
    const MatrixPowerSeries id = MatrixPowerSeries::identity(m, n1);
    MatrixPowerSeries m_minus, m_plus;
    if (odd) {
        const MatrixPowerSeries den = bs * g - site.rho * h;
        m_minus = 2.0 * complex(1.0) * (g * invert(den)) - id;
        m_plus = 2.0 * complex(1.0) * ((id + shift_up(g)) * invert(id + shift_up(den))) - id;
    } else {
        const MatrixPowerSeries den = g * bs - h * site.rho_tilde;
        m_minus = 2.0 * complex(1.0) * (invert(den) * g) - id;
        m_plus = 2.0 * complex(1.0) * (invert(id + shift_up(den)) * (id + shift_up(g))) - id;
    }
    ReconstructionReport rep;
    rep.route = "gh";
    rep.window_lo = k0 - order;
    rep.window_hi = k0 + order + 1;
    auto plus = invert_from_M_series(m_plus, Side::plus, WeylKind::M_plus, k0, order + 1);
    auto minus =
        invert_from_M_series(m_minus.truncated(order), Side::minus, WeylKind::M_minus, k0, order + 1);
    rep.recovered = std::move(minus);
    for (auto& [k, v] : plus) rep.recovered[k] = std::move(v);
    return rep;
}

namespace {

// Order-by-order solution of X Aq X + Bl X + X Cr + D = 0 for a series X
// with X_0 = 0; exactly one of Bl_0, Cr_0 is invertible (left/right mode).
MatrixPowerSeries solve_riccati_series(const MatrixPowerSeries& aq, const MatrixPowerSeries& bl,
                                       const MatrixPowerSeries& cr, const MatrixPowerSeries& d,
                                       bool left_mode) {
    const int m = aq.m(), n = aq.order();
    MatrixPowerSeries x(m, n);
    ComplexMatrix pivot;
    try {
        pivot = left_mode ? bl.coeff(0) : cr.coeff(0);
        pivot = inverse(pivot);
    } catch (const error&) {
        fail(errc::series_order_solve_failed, "pivot coefficient not invertible");
    }
    for (int k = 1; k <= n; ++k) {
        ComplexMatrix rhs = d.coeff(k);
        for (int i = 1; i <= k - 1; ++i)
            for (int j = 1; j <= k - i; ++j)
                if (k - i - j >= 0) rhs += x.coeff(i) * aq.coeff(k - i - j) * x.coeff(j);
        for (int j = 1; j <= k - 1; ++j) rhs += bl.coeff(k - j) * x.coeff(j);
        for (int j = 1; j <= k - 1; ++j) rhs += x.coeff(j) * cr.coeff(k - j);
        if (left_mode)
            x.coeff(k) = -(pivot * rhs);
        else
            x.coeff(k) = -(rhs * pivot);
    }
    return x;
}

} // namespace

ReconstructionReport full_lattice_invert_gg(const MatrixPowerSeries& g_prev,
                                            const MatrixPowerSeries& g,
                                            const ComplexMatrix& alpha_k0, int k0, int order) {
    if (condition_estimate(alpha_k0) >= 1e8)
        fail(errc::alpha_not_invertible, "alpha_k0 condition above threshold");
    const int m = alpha_k0.rows();
    const bool odd = (k0 % 2 != 0);
    const SiteCoefficients site = SiteCoefficients::from_alpha(alpha_k0);
    const int n1 = order + 1;
    const MatrixPowerSeries gs = g.truncated(n1), gps = g_prev.truncated(n1);
    const MatrixPowerSeries id = MatrixPowerSeries::identity(m, n1);
    const MatrixPowerSeries a_series = id + shift_up(gs);
    const ComplexMatrix as = alpha_k0.adjoint();
    const MatrixPowerSeries zg = shift_up(gs);

    MatrixPowerSeries wrapped_gprev =
        odd ? shift_up(site.rho * gps * site.rho) : shift_up(site.rho_tilde * gps * site.rho_tilde);
    MatrixPowerSeries phi_plus;
    if (odd) {
        const MatrixPowerSeries b_series = wrapped_gprev - as * a_series * alpha_k0;
        phi_plus = solve_riccati_series(a_series * alpha_k0, b_series,
                                        complex(-1.0) * zg, as * zg, /*left_mode=*/true);
    } else {
        const MatrixPowerSeries b_series = wrapped_gprev - alpha_k0 * a_series * as;
        phi_plus = solve_riccati_series(alpha_k0 * a_series, complex(-1.0) * zg, b_series,
                                        zg * as, /*left_mode=*/false);
    }
    // Phi_-^{-1} from the factorized identity; factors are invertible at 0.
    const MatrixPowerSeries bracket = invert(MatrixPowerSeries::constant(as, n1) - phi_plus);
    MatrixPowerSeries psi;
    if (odd)
        psi = MatrixPowerSeries::constant(alpha_k0, n1) - invert(a_series) * bracket * wrapped_gprev;
    else
        psi = MatrixPowerSeries::constant(alpha_k0, n1) - wrapped_gprev * bracket * invert(a_series);

    // Pointwise fixed-point cross-check at small |z|.
    double cross_residual = std::numeric_limits<double>::quiet_NaN();
    {
        const double gbound = std::max(1.0, gs.max_coeff_norm());
        double r = 0.05 * std::min(1.0, 1.0 / (1.0 + gbound));
        for (int attempt = 0; attempt < 6; ++attempt) {
            const complex z0(r, 0.3 * r);
            RiccatiProblem p;
            if (odd) {
                p.A = a_series.eval(z0) * alpha_k0;
                p.B = wrapped_gprev.eval(z0) - as * a_series.eval(z0) * alpha_k0;
                p.C = -zg.eval(z0);
                p.D = as * zg.eval(z0);
                p.mode = RiccatiProblem::Mode::B_invertible;
            } else {
                p.A = alpha_k0 * a_series.eval(z0);
                p.B = -zg.eval(z0);
                p.C = wrapped_gprev.eval(z0) - alpha_k0 * a_series.eval(z0) * as;
                p.D = zg.eval(z0) * as;
                p.mode = RiccatiProblem::Mode::C_invertible;
            }
            try {
                const RiccatiSolution sol = riccati_solve(p, 1e-14, 2000);
                cross_residual = (sol.X - phi_plus.eval(z0)).frobenius_norm();
                break;
            } catch (const error& e) {
                if (e.code() != errc::contraction_violated) throw;
                r *= 0.5; // adaptive halving
            }
        }
    }

    ReconstructionReport rep;
    rep.window_lo = k0 - order - 1;
    rep.window_hi = k0 + order + 1;
    auto plus = invert_from_M_series(phi_plus, Side::plus, WeylKind::Phi_plus, k0, order + 1);
    auto minus = invert_from_M_series(psi, Side::minus, WeylKind::Phi_minus_inv, k0, order + 2);
    rep.recovered = std::move(minus);
    for (auto& [k, v] : plus) rep.recovered[k] = std::move(v);
    std::ostringstream route;
    route << "gg; pointwise_cross_residual=" << cross_residual;
    rep.route = route.str();
    return rep;
}

LocalUniquenessReport local_uniqueness_check(const VerblunskyData& d1, const VerblunskyData& d2,
                                             int k0, int order) {
    LocalUniquenessReport rep;
    rep.window_lo = k0 - order;
    rep.window_hi = k0 + order + 1;
    const GreensData gh1 = greens_series(d1, k0, order);
    const GreensData gh2 = greens_series(d2, k0, order);
    double dev = 0.0;
    for (int j = 0; j <= order; ++j) {
        dev = std::max(dev, (gh1.g.coeff(j) - gh2.g.coeff(j)).frobenius_norm());
        dev = std::max(dev, (gh1.h.coeff(j) - gh2.h.coeff(j)).frobenius_norm());
    }
    rep.gh_coefficient_deviation = dev;
    bool alphas_agree = true;
    for (int k = k0 - order - 2; k <= k0 + order + 2; ++k) {
        if (!d1.contains(k) || !d2.contains(k)) continue;
        if (op_norm(d1.alpha(k) - d2.alpha(k)) > 0.0) alphas_agree = false;
    }
    rep.forward_ok = !alphas_agree || dev < 1e-12;
    if (dev < 1e-10) {
        ReconstructionReport r1 = full_lattice_invert_gh(gh1, order);
        ReconstructionReport r2 = full_lattice_invert_gh(gh2, order);
        double adev = 0.0;
        for (const auto& [k, v] : r1.recovered)
            if (r2.recovered.count(k)) adev = std::max(adev, op_norm(v - r2.recovered.at(k)));
        rep.alpha_deviation = adev;
        rep.inverse_ok = adev < 1e-6;
    } else {
        rep.inverse_ok = true; // hypothesis of direction (b) not met
    }
    return rep;
}

} // namespace cmv
