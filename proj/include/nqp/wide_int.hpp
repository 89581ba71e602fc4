#pragma once

#include <cstdint>
#include <string>

namespace nqp {

/// Accumulator for exact-integer objectives. Instances are range-checked
/// before evaluation so that no objective or move delta can overflow it.
using Wide = __int128;

std::string to_string(Wide value);

inline Wide abs_wide(Wide v) { return v < 0 ? -v : v; }

}  // namespace nqp
