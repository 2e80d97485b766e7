#include "cmv/laurent.hpp"

#include <cmath>

namespace cmv {

MatrixLaurentPolynomial MatrixLaurentPolynomial::monomial(int exponent, const ComplexMatrix& coeff) {
    MatrixLaurentPolynomial p(coeff.rows());
    p.set_coeff(exponent, coeff);
    return p;
}

ComplexMatrix MatrixLaurentPolynomial::coeff(int e) const {
    auto it = coeffs_.find(e);
    if (it == coeffs_.end()) return ComplexMatrix::zero(m_, m_);
    return it->second;
}

void MatrixLaurentPolynomial::prune(int e) {
    auto it = coeffs_.find(e);
    if (it != coeffs_.end() && it->second.frobenius_norm() == 0.0) coeffs_.erase(it);
}

void MatrixLaurentPolynomial::set_coeff(int e, const ComplexMatrix& c) {
    if (c.frobenius_norm() == 0.0) {
        coeffs_.erase(e);
        return;
    }
    coeffs_[e] = c;
}

MatrixLaurentPolynomial& MatrixLaurentPolynomial::operator+=(const MatrixLaurentPolynomial& o) {
    for (const auto& [e, c] : o.coeffs_) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end())
            coeffs_.emplace(e, c);
        else {
            it->second += c;
            prune(e);
        }
    }
    return *this;
}

MatrixLaurentPolynomial& MatrixLaurentPolynomial::operator-=(const MatrixLaurentPolynomial& o) {
    for (const auto& [e, c] : o.coeffs_) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end())
            coeffs_.emplace(e, -c);
        else {
            it->second -= c;
            prune(e);
        }
    }
    return *this;
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::shifted(int by) const {
    MatrixLaurentPolynomial r(m_);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + by, c);
    return r;
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::left_mul(const ComplexMatrix& a) const {
    MatrixLaurentPolynomial r(m_);
    for (const auto& [e, c] : coeffs_) r.set_coeff(e, a * c);
    return r;
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::right_mul(const ComplexMatrix& a) const {
    MatrixLaurentPolynomial r(m_);
    for (const auto& [e, c] : coeffs_) r.set_coeff(e, c * a);
    return r;
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::scaled(complex s) const {
    MatrixLaurentPolynomial r(m_);
    if (s == complex(0.0)) return r;
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, c * s);
    return r;
}

MatrixLaurentPolynomial
MatrixLaurentPolynomial::scalar_poly_mul(const std::map<int, complex>& s) const {
    MatrixLaurentPolynomial r(m_);
    for (const auto& [se, sc] : s)
        for (const auto& [e, c] : coeffs_) {
            auto it = r.coeffs_.find(se + e);
            if (it == r.coeffs_.end())
                r.coeffs_.emplace(se + e, c * sc);
            else {
                it->second += c * sc;
                r.prune(se + e);
            }
        }
    return r;
}

MatrixLaurentPolynomial MatrixLaurentPolynomial::adjoint_coeffs() const {
    MatrixLaurentPolynomial r(m_);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(-e, c.adjoint());
    return r;
}

ComplexMatrix MatrixLaurentPolynomial::eval(complex z) const {
    ComplexMatrix v = ComplexMatrix::zero(m_, m_);
    for (const auto& [e, c] : coeffs_) v += c * std::pow(z, e);
    return v;
}

double MatrixLaurentPolynomial::max_coeff_norm() const {
    double s = 0.0;
    for (const auto& [e, c] : coeffs_) s = std::max(s, c.frobenius_norm());
    return s;
}

MatrixLaurentPolynomial operator+(MatrixLaurentPolynomial a, const MatrixLaurentPolynomial& b) {
    return a += b;
}
MatrixLaurentPolynomial operator-(MatrixLaurentPolynomial a, const MatrixLaurentPolynomial& b) {
    return a -= b;
}

const MatrixLaurentPolynomial& SolutionFamily::at(int k) const {
    auto it = polys.find(k);
    if (it == polys.end()) fail(errc::out_of_window, "family has no polynomial at requested site");
    return it->second;
}

ComplexMatrix transfer(const VerblunskyData& data, complex z, int k) {
    if (std::abs(z) < 1e-300) fail(errc::zero_argument, "transfer matrix needs z != 0");
    const int m = data.m();
    ComplexMatrix t(2 * m, 2 * m);
    if (k % 2 != 0) {
        t.set_block(0, 0, data.rho_tilde_inv(k) * data.alpha(k));
        t.set_block(0, m, z * data.rho_tilde_inv(k));
        t.set_block(m, 0, (1.0 / z) * data.rho_inv(k));
        t.set_block(m, m, data.rho_inv(k) * data.alpha(k).adjoint());
    } else {
        t.set_block(0, 0, data.rho_inv(k) * data.alpha(k).adjoint());
        t.set_block(0, m, data.rho_inv(k));
        t.set_block(m, 0, data.rho_tilde_inv(k));
        t.set_block(m, m, data.rho_tilde_inv(k) * data.alpha(k));
    }
    return t;
}

using Poly = MatrixLaurentPolynomial;

SiteCoefficients SiteCoefficients::from_alpha(const ComplexMatrix& alpha, double positivity_floor) {
    const int m = alpha.rows();
    const ComplexMatrix id = ComplexMatrix::identity(m);
    SiteCoefficients s;
    s.alpha = alpha;
    auto root_pair = [&](const ComplexMatrix& g, ComplexMatrix& root, ComplexMatrix& root_inv) {
        const HermitianEigen eg = herm_eigen(g, 1e-8);
        if (eg.values.front() < positivity_floor)
            fail(errc::degenerate_measure,
                 "normalization Gram matrix eigenvalue " + std::to_string(eg.values.front()));
        const int n = g.rows();
        ComplexMatrix d(n, n), di(n, n);
        for (int i = 0; i < n; ++i) {
            const double lam = std::max(eg.values[i], 1e-300);
            d(i, i) = std::sqrt(lam);
            di(i, i) = 1.0 / std::sqrt(lam);
        }
        root = eg.vectors * d * eg.vectors.adjoint();
        root_inv = eg.vectors * di * eg.vectors.adjoint();
    };
    root_pair(id - alpha.adjoint() * alpha, s.rho, s.rho_inv);
    root_pair(id - alpha * alpha.adjoint(), s.rho_tilde, s.rho_tilde_inv);
    return s;
}

PolyPair step_pair_forward(const SiteCoefficients& s, int k, const PolyPair& prev) {
    PolyPair next;
    if (k % 2 != 0) {
        next.u = (prev.u.left_mul(s.alpha) + prev.v.shifted(1)).left_mul(s.rho_tilde_inv);
        next.v = (prev.u.shifted(-1) + prev.v.left_mul(s.alpha.adjoint())).left_mul(s.rho_inv);
    } else {
        next.u = (prev.u.left_mul(s.alpha.adjoint()) + prev.v).left_mul(s.rho_inv);
        next.v = (prev.u + prev.v.left_mul(s.alpha)).left_mul(s.rho_tilde_inv);
    }
    return next;
}

PolyPair step_pair_backward(const SiteCoefficients& s, int k, const PolyPair& cur) {
    PolyPair prev;
    if (k % 2 != 0) {
        prev.u = (cur.v.shifted(1) - cur.u.left_mul(s.alpha.adjoint())).left_mul(s.rho_inv);
        prev.v = (cur.u.left_mul(s.rho_tilde) - prev.u.left_mul(s.alpha)).shifted(-1);
    } else {
        prev.v = (cur.u - cur.v.left_mul(s.alpha.adjoint())).left_mul(s.rho_inv);
        prev.u = cur.v.left_mul(s.rho_tilde) - prev.v.left_mul(s.alpha);
    }
    return prev;
}

PolyPair seed_pair(int m, int k0, Side side, bool second_kind) {
    const ComplexMatrix id = ComplexMatrix::identity(m);
    const bool odd = (k0 % 2 != 0);
    PolyPair p;
    if (side == Side::plus) {
        if (!second_kind) {
            p.u = odd ? Poly::monomial(1, id) : Poly::constant(id);
            p.v = Poly::constant(id);
        } else {
            p.u = odd ? Poly::monomial(1, id) : Poly::constant(-id);
            p.v = odd ? Poly::constant(-id) : Poly::constant(id);
        }
    } else {
        if (!second_kind) {
            p.u = odd ? Poly::constant(id) : Poly::monomial(1, -id);
            p.v = odd ? Poly::constant(-id) : Poly::constant(id);
        } else {
            p.u = odd ? Poly::constant(id) : Poly::monomial(1, id);
            p.v = Poly::constant(id);
        }
    }
    return p;
}

namespace {

PolyPair step_forward(const VerblunskyData& d, int k, const PolyPair& prev) {
    SiteCoefficients s{d.alpha(k), d.rho(k), d.rho_tilde(k), d.rho_inv(k), d.rho_tilde_inv(k)};
    return step_pair_forward(s, k, prev);
}

PolyPair step_backward(const VerblunskyData& d, int k, const PolyPair& cur) {
    SiteCoefficients s{d.alpha(k), d.rho(k), d.rho_tilde(k), d.rho_inv(k), d.rho_tilde_inv(k)};
    return step_pair_backward(s, k, cur);
}

} // namespace

FamilyPair generate_pair(const VerblunskyData& data, int k0, Side side, bool second_kind,
                         int k_lo, int k_hi) {
    if (k_lo > k0 || k_hi < k0) fail(errc::out_of_window, "generation range must contain k0");
    if (k_hi > k0 && !data.contains(k_hi)) fail(errc::out_of_window, "range exceeds window (right)");
    if (k_lo < k0 && !data.contains(k_lo + 1))
        fail(errc::out_of_window, "range exceeds window (left)");
    FamilyPair fam;
    fam.k0 = k0;
    fam.side = side;
    fam.second_kind = second_kind;
    fam.m = data.m();
    PolyPair at_k0 = seed_pair(data.m(), k0, side, second_kind);
    fam.first[k0] = at_k0.u;
    fam.second[k0] = at_k0.v;
    PolyPair cur = at_k0;
    for (int k = k0 + 1; k <= k_hi; ++k) {
        cur = step_forward(data, k, cur);
        fam.first[k] = cur.u;
        fam.second[k] = cur.v;
    }
    cur = at_k0;
    for (int k = k0; k > k_lo; --k) {
        cur = step_backward(data, k, cur);
        fam.first[k - 1] = cur.u;
        fam.second[k - 1] = cur.v;
    }
    return fam;
}

SolutionFamily generate_family(const VerblunskyData& data, int k0, Side side, Kind kind,
                               int depth) {
    if (depth < 0) fail(errc::out_of_window, "depth must be nonnegative");
    const bool second_kind = (kind == Kind::Q || kind == Kind::S);
    const int k_lo = (side == Side::plus) ? k0 : k0 - depth;
    const int k_hi = (side == Side::plus) ? k0 + depth : k0;
    FamilyPair pair = generate_pair(data, k0, side, second_kind, k_lo, k_hi);
    SolutionFamily out;
    out.k0 = k0;
    out.side = side;
    out.kind = kind;
    out.m = data.m();
    const bool want_first = (kind == Kind::P || kind == Kind::Q);
    out.polys = want_first ? std::move(pair.first) : std::move(pair.second);
    return out;
}

MatrixLaurentPolynomial modified_variant(const MatrixLaurentPolynomial& p, int k0, Side side) {
    const bool odd = (k0 % 2 != 0);
    if (side == Side::plus) return odd ? p.shifted(-1) : p;
    return odd ? p : p.shifted(-1).scaled(-1.0);
}

int leading_exponent(Kind kind, Side side, int k0, int k) {
    const int off = (side == Side::plus) ? k - k0 : k0 - k;
    if (off < 0) fail(errc::out_of_window, "leading_exponent offset on the wrong side of k0");
    auto schedule_a = [](int j) { return (j % 2 != 0) ? -(j + 1) / 2 : j / 2; };
    auto schedule_b = [](int j) { return (j % 2 != 0) ? (j + 1) / 2 : -(j / 2); };
    const bool first_component = (kind == Kind::P || kind == Kind::Q);
    const bool k0_odd = (k0 % 2 != 0);
    // Group assignment by (side, k0 parity); the first-component families on
    // the "z-weighted" branches carry an extra factor of z.
    bool weighted;
    if (side == Side::plus)
        weighted = k0_odd;
    else
        weighted = !k0_odd;
    if (first_component) return weighted ? schedule_a(off) + 1 : schedule_b(off);
    return weighted ? schedule_b(off) : schedule_a(off);
}

LeadingTerm leading_term(const SolutionFamily& fam, int k) {
    const MatrixLaurentPolynomial& p = fam.at(k);
    const int e = leading_exponent(fam.kind, fam.side, fam.k0, k);
    ComplexMatrix c = p.coeff(e);
    const double scale = std::max(1.0, p.max_coeff_norm());
    if (c.frobenius_norm() <= 1e-12 * scale)
        fail(errc::missing_leading_term, "prescribed leading coefficient is numerically zero");
    bool invertible = true;
    try {
        invertible = op_norm(inverse(c)) < 1e12;
    } catch (const error&) {
        invertible = false;
    }
    return LeadingTerm{e, std::move(c), invertible};
}

std::map<int, complex> connection_c(int k0) {
    if (k0 % 2 != 0) return {{-1, 0.5}, {0, -0.5}};
    return {{0, 0.5}, {1, -0.5}};
}

std::map<int, complex> connection_d(int k0) {
    if (k0 % 2 != 0) return {{-1, 0.5}, {0, 0.5}};
    return {{0, 0.5}, {1, 0.5}};
}

MinusFamilies connect_left_right(const VerblunskyData& data, int k0, int depth) {
    const int k_lo = k0 - depth;
    FamilyPair pr = generate_pair(data, k0, Side::plus, false, k_lo, k0);
    FamilyPair qs = generate_pair(data, k0, Side::plus, true, k_lo, k0);

    const auto c = connection_c(k0);
    const auto d = connection_d(k0);
    const ComplexMatrix rti_b = data.rho_tilde_inv(k0) * data.b(k0);
    const ComplexMatrix ri_bs = data.rho_inv(k0) * data.b(k0).adjoint();
    const ComplexMatrix rti_a = data.rho_tilde_inv(k0) * data.a(k0);
    const ComplexMatrix ri_as = data.rho_inv(k0) * data.a(k0).adjoint();
    const ComplexMatrix p_factor = 0.5 * (rti_b - ri_bs);  // multiplies (P+, R+) for P-(.,k0-1)
    const ComplexMatrix q_factor = 0.5 * (rti_b + ri_bs);  // multiplies (Q+, S+) for P-(.,k0-1)
    const ComplexMatrix p_factor2 = 0.5 * (rti_a + ri_as); // for Q-(.,k0-1)
    const ComplexMatrix q_factor2 = 0.5 * (rti_a - ri_as);

    MinusFamilies out;
    auto init = [&](SolutionFamily& f, int anchor, Kind kind) {
        f.k0 = anchor;
        f.side = Side::minus;
        f.kind = kind;
        f.m = data.m();
    };
    init(out.p_at_k0, k0, Kind::P);
    init(out.q_at_k0, k0, Kind::Q);
    init(out.r_at_k0, k0, Kind::R);
    init(out.s_at_k0, k0, Kind::S);
    init(out.p_at_k0m1, k0 - 1, Kind::P);
    init(out.q_at_k0m1, k0 - 1, Kind::Q);
    init(out.r_at_k0m1, k0 - 1, Kind::R);
    init(out.s_at_k0m1, k0 - 1, Kind::S);

    for (int k = k_lo; k <= k0; ++k) {
        const Poly &pu = pr.first.at(k), &pv = pr.second.at(k);
        const Poly &qu = qs.first.at(k), &qv = qs.second.at(k);
        out.p_at_k0.polys[k] = pu.scalar_poly_mul(c) + qu.scalar_poly_mul(d);
        out.r_at_k0.polys[k] = pv.scalar_poly_mul(c) + qv.scalar_poly_mul(d);
        out.q_at_k0.polys[k] = pu.scalar_poly_mul(d) + qu.scalar_poly_mul(c);
        out.s_at_k0.polys[k] = pv.scalar_poly_mul(d) + qv.scalar_poly_mul(c);
        if (k <= k0 - 1) {
            out.p_at_k0m1.polys[k] = pu.right_mul(p_factor) + qu.right_mul(q_factor);
            out.r_at_k0m1.polys[k] = pv.right_mul(p_factor) + qv.right_mul(q_factor);
            out.q_at_k0m1.polys[k] = pu.right_mul(p_factor2) + qu.right_mul(q_factor2);
            out.s_at_k0m1.polys[k] = pv.right_mul(p_factor2) + qv.right_mul(q_factor2);
        }
    }
    return out;
}

std::map<int, std::pair<MatrixLaurentPolynomial, MatrixLaurentPolynomial>>
full_lattice_basis(const VerblunskyData& data, int k0, int depth) {
    FamilyPair pr = generate_pair(data, k0, Side::plus, false, k0 - depth, k0 + depth);
    FamilyPair qs = generate_pair(data, k0, Side::plus, true, k0 - depth, k0 + depth);
    const bool odd = (k0 % 2 != 0);
    // Column mixing of (P_+, Q_+) producing anchors (I, 0) at k0-1, (0, I) at k0.
    ComplexMatrix m00, m10, m01, m11;
    if (odd) {
        m00 = 0.5 * data.rho(k0);
        m10 = -0.5 * data.rho(k0);
        m01 = 0.5 * data.a(k0).adjoint();
        m11 = 0.5 * data.b(k0).adjoint();
    } else {
        m00 = 0.5 * data.rho_tilde(k0);
        m10 = 0.5 * data.rho_tilde(k0);
        m01 = 0.5 * data.a(k0);
        m11 = -0.5 * data.b(k0);
    }
    std::map<int, std::pair<MatrixLaurentPolynomial, MatrixLaurentPolynomial>> out;
    for (int k = k0 - depth; k <= k0 + depth; ++k) {
        const Poly& pu = pr.first.at(k);
        const Poly& qu = qs.first.at(k);
        Poly p0 = pu.right_mul(m00) + qu.right_mul(m10);
        Poly p1 = pu.right_mul(m01) + qu.right_mul(m11);
        if (odd) {
            p0 = p0.shifted(-1);
            p1 = p1.shifted(-1);
        }
        out.emplace(k, std::make_pair(std::move(p0), std::move(p1)));
    }
    return out;
}

} // namespace cmv
