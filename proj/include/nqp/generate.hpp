#pragma once

#include <cstdint>

#include "nqp/instance.hpp"

namespace nqp {

/// Random exact-integer PSD instance: Q = A^T A with A_ij uniform in
/// [-entry_bound, entry_bound], c_i uniform in [-2 entry_bound^2, 2 entry_bound^2].
/// Deterministic in `seed`.
IntInstance generate_random_instance(std::size_t n, const LevelSet& levels, std::uint64_t seed,
                                     Int entry_bound);

/// Random level set of `count` distinct integers drawn from [lo, hi].
LevelSet generate_random_level_set(std::size_t count, Int lo, Int hi, std::uint64_t seed);

}  // namespace nqp
