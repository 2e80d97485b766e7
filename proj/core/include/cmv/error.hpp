#pragma once

#include <stdexcept>
#include <string>

namespace cmv {

enum class errc {
    not_hermitian,
    not_psd,
    no_convergence,
    singular,
    cayley_degenerate,
    not_unitary,
    norm_too_large,
    shape_mismatch,
    window_too_small,
    out_of_window,
    zero_argument,
    depth_mismatch,
    missing_leading_term,
    degenerate_measure,
    node_collision,
    non_invertible_constant_term,
    missing_alpha,
    singular_wronskian,
    window_too_narrow,
    contraction_violated,
    hypothesis_violated,
    h_not_invertible,
    alpha_not_invertible,
    series_order_solve_failed,
    boundary_unavailable,
    bad_config,
};

const char* errc_name(errc c);

/// All library failures surface as this one exception type; `code()` carries
/// the machine-readable condition, `what()` the human-readable context.
class error : public std::runtime_error {
  public:
    error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw error(code, msg); }

} // namespace cmv
