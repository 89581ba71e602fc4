#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nqp/instance.hpp"

namespace nqp {

enum class Severity { error, warning };

struct Violation {
    enum class Kind { asymmetric, level_set, not_psd, psd_suspect };

    Kind kind;
    Severity severity;
    std::string message;
    std::optional<std::pair<std::size_t, std::size_t>> where;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const;  ///< no error-severity violations (warnings allowed)
    bool empty() const { return violations.empty(); }
};

/// Reports every invariant violation of `inst`.
///
/// Symmetry must be literal in both domains. PSD is only checked when
/// `psd_declared` is set: exactly through all principal minors for integer
/// instances with N <= 12, otherwise through a numeric smallest-eigenvalue
/// estimate that raises a warning below -1e-8 * ||Q||_inf.
template <class T>
ValidationReport validate_instance(const Instance<T>& inst);

/// Exact PSD test of an integer symmetric matrix via all 2^N - 1 principal minors.
/// Returns the first subset (as a bit mask) whose minor is negative, if any.
std::optional<unsigned long long> find_negative_principal_minor(std::span<const Int> q, std::size_t n);

/// Smallest eigenvalue of a symmetric matrix, numerically.
double smallest_eigenvalue(std::span<const double> q, std::size_t n);

inline constexpr std::size_t exact_psd_max_dim = 12;

}  // namespace nqp
