#pragma once

#include <cstdint>

#include "cmv/verblunsky.hpp"

namespace cmv {

/// Coefficient window sampled inside the hypothesis ball: each alpha_k is a
/// Gaussian complex matrix rescaled so its operator norm is uniform in
/// (0, norm_cap]. Deterministic in the seed.
VerblunskyData sample_verblunsky(int m, int window, int k_min, double norm_cap, std::uint64_t seed);

/// One Gaussian complex matrix rescaled to the given operator norm.
ComplexMatrix sample_contraction(int m, double target_norm, std::uint64_t seed);

} // namespace cmv
