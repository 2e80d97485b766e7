#pragma once

#include <map>
#include <vector>

#include "cmv/linalg.hpp"

namespace cmv {

enum class Side { plus, minus };

/// A window of matrix Verblunsky coefficients alpha_k, k_min <= k <= k_max,
/// with the derived quantities rho_k = sqrt(I - a*a), rho~_k = sqrt(I - aa*),
/// a_k = I + alpha_k and b_k = I - alpha_k cached per site.
class VerblunskyData {
  public:
    VerblunskyData() = default;

    int k_min() const noexcept { return k_min_; }
    int k_max() const noexcept { return k_max_; }
    int m() const noexcept { return m_; }
    int window_length() const noexcept { return k_max_ - k_min_ + 1; }
    bool contains(int k) const noexcept { return k >= k_min_ && k <= k_max_; }

    const ComplexMatrix& alpha(int k) const { return at(alpha_, k, "alpha"); }
    const ComplexMatrix& rho(int k) const { return at(rho_, k, "rho"); }
    const ComplexMatrix& rho_tilde(int k) const { return at(rho_tilde_, k, "rho_tilde"); }
    const ComplexMatrix& rho_inv(int k) const { return at(rho_inv_, k, "rho_inv"); }
    const ComplexMatrix& rho_tilde_inv(int k) const { return at(rho_tilde_inv_, k, "rho_tilde_inv"); }
    ComplexMatrix a(int k) const { return ComplexMatrix::identity(m_) + alpha(k); }
    ComplexMatrix b(int k) const { return ComplexMatrix::identity(m_) - alpha(k); }

    /// Returns a copy restricted to [lo, hi].
    VerblunskyData sub_window(int lo, int hi) const;

    /// Returns a copy with alpha_k replaced (derived quantities recomputed).
    /// With allow_split set, a unitary value (the alpha = I splitting device)
    /// is accepted; rho and rho~ collapse to zero there and the inverse
    /// accessors refuse the site.
    VerblunskyData with_alpha(int k, const ComplexMatrix& alpha, bool allow_split = false) const;

    bool is_split_site(int k) const { return contains(k) && split_[static_cast<size_t>(k - k_min_)] != 0; }

    friend VerblunskyData derive(const std::map<int, ComplexMatrix>& alpha_window);

  private:
    const ComplexMatrix& at(const std::vector<ComplexMatrix>& v, int k, const char* who) const;

    int k_min_ = 0;
    int k_max_ = -1;
    int m_ = 0;
    std::vector<ComplexMatrix> alpha_, rho_, rho_tilde_, rho_inv_, rho_tilde_inv_;
    std::vector<char> split_;
};

/// Validates Hypothesis ‖alpha_k‖ < 1 and computes all derived quantities;
/// the commutation identities rho~^{±1} a = a rho^{±1} and the a/b relations
/// are checked to 1e-9 on every site.
VerblunskyData derive(const std::map<int, ComplexMatrix>& alpha_window);

struct ThetaBlock {
    int k;
    ComplexMatrix block; // 2m x 2m, [[-alpha, rho~], [rho, alpha*]]
};

ThetaBlock theta(const VerblunskyData& data, int k);

/// Finite unitary CMV truncation acting on lattice sites
/// [site_min, site_max] = [k_min, k_max - 1]. The factor V carries the
/// even-indexed Theta blocks and W the odd-indexed ones; a Theta block with
/// index j couples sites j-1 and j, so the boundary blocks at k_min and
/// k_max are clipped to their diagonal corner. A split flag replaces the
/// corresponding boundary coefficient by the identity, which closes the
/// window into an exactly unitary matrix.
struct CMVOperator {
    int m = 0;
    int site_min = 0;
    int site_max = -1;
    ComplexMatrix U, V, W;

    int sites() const noexcept { return site_max - site_min + 1; }
    int dim() const noexcept { return m * sites(); }
    /// Storage row of the first scalar row of lattice block k.
    int row_of(int k) const { return m * (k - site_min); }
    ComplexMatrix block_of(const ComplexMatrix& mat, int k, int kp) const {
        return mat.block(row_of(k), row_of(kp), m, m);
    }
};

CMVOperator build_cmv(const VerblunskyData& data, bool split_left, bool split_right);

/// The half-lattice truncation U_{+,k0} on [k0, k_max - 1] (plus) or
/// U_{-,k0} on [k_min, k0] (minus), split at both ends.
CMVOperator half_lattice(const VerblunskyData& data, int k0, Side side);

} // namespace cmv
