#include "cmv/verblunsky.hpp"

#include <cmath>

namespace cmv {

const ComplexMatrix& VerblunskyData::at(const std::vector<ComplexMatrix>& v, int k,
                                        const char* who) const {
    if (!contains(k)) fail(errc::out_of_window, std::string(who) + " index outside window");
    if (split_[static_cast<size_t>(k - k_min_)] != 0 && (&v == &rho_inv_ || &v == &rho_tilde_inv_))
        fail(errc::norm_too_large, std::string(who) + " undefined at a split site");
    return v[static_cast<size_t>(k - k_min_)];
}

namespace {

struct SiteDerived {
    ComplexMatrix rho, rho_tilde, rho_inv, rho_tilde_inv;
    bool split = false;
};

SiteDerived derive_site(const ComplexMatrix& alpha, int k, bool allow_split = false) {
    const int m = alpha.rows();
    const ComplexMatrix id = ComplexMatrix::identity(m);
    const double nrm = op_norm(alpha);
    if (nrm >= 1.0 - 1e-8) {
        const bool unitary = (alpha.adjoint() * alpha - id).frobenius_norm() < 1e-12;
        if (!(allow_split && unitary))
            fail(errc::norm_too_large, "op_norm(alpha_" + std::to_string(k) + ") = " +
                                           std::to_string(nrm) + " >= 1 - 1e-8");
        SiteDerived out;
        out.rho = ComplexMatrix::zero(m, m);
        out.rho_tilde = ComplexMatrix::zero(m, m);
        out.rho_inv = ComplexMatrix::zero(m, m);
        out.rho_tilde_inv = ComplexMatrix::zero(m, m);
        out.split = true;
        return out;
    }
    auto sqrt_and_inv = [&](const ComplexMatrix& g, ComplexMatrix& root, ComplexMatrix& root_inv) {
        const HermitianEigen eg = herm_eigen(g);
        const int n = g.rows();
        ComplexMatrix d(n, n), di(n, n);
        for (int i = 0; i < n; ++i) {
            const double lam = std::max(eg.values[i], 0.0);
            d(i, i) = std::sqrt(lam);
            di(i, i) = 1.0 / std::sqrt(lam);
        }
        root = eg.vectors * d * eg.vectors.adjoint();
        root_inv = eg.vectors * di * eg.vectors.adjoint();
    };
    SiteDerived out;
    sqrt_and_inv(id - alpha.adjoint() * alpha, out.rho, out.rho_inv);
    sqrt_and_inv(id - alpha * alpha.adjoint(), out.rho_tilde, out.rho_tilde_inv);
    return out;
}

void check_site_identities(const VerblunskyData& d, int k) {
    const int m = d.m();
    const ComplexMatrix id2 = 2.0 * ComplexMatrix::identity(m);
    const ComplexMatrix &al = d.alpha(k);
    const double r1 = (d.rho_tilde(k) * al - al * d.rho(k)).frobenius_norm();
    const double r2 = (d.rho_tilde_inv(k) * al - al * d.rho_inv(k)).frobenius_norm();
    const ComplexMatrix a = d.a(k), b = d.b(k);
    const ComplexMatrix rti2 = d.rho_tilde_inv(k) * d.rho_tilde_inv(k);
    const ComplexMatrix ri2 = d.rho_inv(k) * d.rho_inv(k);
    const double r3 = (a.adjoint() * rti2 * a - a * ri2 * a.adjoint()).frobenius_norm();
    const double r4 = (a.adjoint() * rti2 * b + a * ri2 * b.adjoint() - id2).frobenius_norm();
    if (r1 > 1e-9 || r2 > 1e-9 || r3 > 1e-9 || r4 > 1e-9)
        fail(errc::shape_mismatch,
             "derived-quantity identities violated at k = " + std::to_string(k));
}

} // namespace

VerblunskyData derive(const std::map<int, ComplexMatrix>& alpha_window) {
    if (alpha_window.empty()) fail(errc::window_too_small, "empty coefficient window");
    VerblunskyData d;
    d.k_min_ = alpha_window.begin()->first;
    d.k_max_ = alpha_window.rbegin()->first;
    d.m_ = alpha_window.begin()->second.rows();
    const int len = d.k_max_ - d.k_min_ + 1;
    if (static_cast<int>(alpha_window.size()) != len)
        fail(errc::out_of_window, "coefficient window has gaps");
    d.alpha_.reserve(len);
    for (const auto& [k, al] : alpha_window) {
        if (al.rows() != d.m_ || al.cols() != d.m_)
            fail(errc::shape_mismatch, "alpha_" + std::to_string(k) + " is not m x m");
        d.alpha_.push_back(al);
        SiteDerived s = derive_site(al, k);
        d.rho_.push_back(std::move(s.rho));
        d.rho_tilde_.push_back(std::move(s.rho_tilde));
        d.rho_inv_.push_back(std::move(s.rho_inv));
        d.rho_tilde_inv_.push_back(std::move(s.rho_tilde_inv));
        d.split_.push_back(0);
    }
    for (int k = d.k_min_; k <= d.k_max_; ++k) check_site_identities(d, k);
    return d;
}

VerblunskyData VerblunskyData::sub_window(int lo, int hi) const {
    if (lo < k_min_ || hi > k_max_ || lo > hi) fail(errc::out_of_window, "sub_window out of range");
    VerblunskyData d;
    d.k_min_ = lo;
    d.k_max_ = hi;
    d.m_ = m_;
    for (int k = lo; k <= hi; ++k) {
        const size_t i = static_cast<size_t>(k - k_min_);
        d.alpha_.push_back(alpha_[i]);
        d.rho_.push_back(rho_[i]);
        d.rho_tilde_.push_back(rho_tilde_[i]);
        d.rho_inv_.push_back(rho_inv_[i]);
        d.rho_tilde_inv_.push_back(rho_tilde_inv_[i]);
        d.split_.push_back(split_[i]);
    }
    return d;
}

VerblunskyData VerblunskyData::with_alpha(int k, const ComplexMatrix& alpha,
                                          bool allow_split) const {
    if (!contains(k)) fail(errc::out_of_window, "with_alpha index outside window");
    VerblunskyData d = *this;
    const size_t i = static_cast<size_t>(k - k_min_);
    d.alpha_[i] = alpha;
    SiteDerived s = derive_site(alpha, k, allow_split);
    d.rho_[i] = std::move(s.rho);
    d.rho_tilde_[i] = std::move(s.rho_tilde);
    d.rho_inv_[i] = std::move(s.rho_inv);
    d.rho_tilde_inv_[i] = std::move(s.rho_tilde_inv);
    d.split_[i] = s.split ? 1 : 0;
    return d;
}

ThetaBlock theta(const VerblunskyData& data, int k) {
    const int m = data.m();
    ComplexMatrix t(2 * m, 2 * m);
    t.set_block(0, 0, -data.alpha(k));
    t.set_block(0, m, data.rho_tilde(k));
    t.set_block(m, 0, data.rho(k));
    t.set_block(m, m, data.alpha(k).adjoint());
    return ThetaBlock{k, std::move(t)};
}

namespace {

// Adds the Theta block with index j (coupling sites j-1 and j) to `factor`,
// clipping at the window boundary. `alpha_override` replaces alpha_j when
// present (the split convention alpha = I at the window ends).
void place_theta(ComplexMatrix& factor, const CMVOperator& op, const VerblunskyData& data, int j,
                 const ComplexMatrix* alpha_override) {
    const int m = op.m;
    const ComplexMatrix& al = alpha_override ? *alpha_override : data.alpha(j);
    const bool has_upper = j - 1 >= op.site_min;
    const bool has_lower = j <= op.site_max;
    if (has_upper && has_lower) {
        factor.set_block(op.row_of(j - 1), op.row_of(j - 1), -al);
        factor.set_block(op.row_of(j - 1), op.row_of(j), data.rho_tilde(j));
        factor.set_block(op.row_of(j), op.row_of(j - 1), data.rho(j));
        factor.set_block(op.row_of(j), op.row_of(j), al.adjoint());
    } else if (has_lower) {
        factor.set_block(op.row_of(j), op.row_of(j), al.adjoint());
    } else if (has_upper) {
        factor.set_block(op.row_of(j - 1), op.row_of(j - 1), -al);
    }
}

} // namespace

CMVOperator build_cmv(const VerblunskyData& data, bool split_left, bool split_right) {
    if (data.window_length() < 2) fail(errc::window_too_small, "build_cmv needs window length >= 2");
    CMVOperator op;
    op.m = data.m();
    op.site_min = data.k_min();
    op.site_max = data.k_max() - 1;
    const int n = op.dim();
    op.V = ComplexMatrix::zero(n, n);
    op.W = ComplexMatrix::zero(n, n);
    const ComplexMatrix id = ComplexMatrix::identity(op.m);
    for (int j = data.k_min(); j <= data.k_max(); ++j) {
        const bool boundary_left = (j == data.k_min());
        const bool boundary_right = (j == data.k_max());
        const ComplexMatrix* override_ptr = nullptr;
        if ((boundary_left && split_left) || (boundary_right && split_right)) override_ptr = &id;
        ComplexMatrix& factor = (j % 2 == 0) ? op.V : op.W;
        place_theta(factor, op, data, j, override_ptr);
    }
    op.U = op.V * op.W;
    return op;
}

CMVOperator half_lattice(const VerblunskyData& data, int k0, Side side) {
    if (!data.contains(k0)) fail(errc::out_of_window, "half_lattice anchor outside window");
    if (side == Side::plus) {
        if (data.k_max() - k0 < 1) fail(errc::out_of_window, "no room to the right of k0");
        return build_cmv(data.sub_window(k0, data.k_max()), true, true);
    }
    if (k0 + 1 > data.k_max()) fail(errc::out_of_window, "no room for the split at k0 + 1");
    return build_cmv(data.sub_window(data.k_min(), k0 + 1), true, true);
}

} // namespace cmv
