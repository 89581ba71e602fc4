#pragma once

#include <cstddef>
#include <span>
#include <type_traits>
#include <variant>
#include <vector>

#include "nqp/level_set.hpp"
#include "nqp/wide_int.hpp"

namespace nqp {

enum class Domain { exact_integer, real };

const char* to_string(Domain d);

template <class T>
struct DomainTraits;

template <>
struct DomainTraits<Int> {
    using Objective = Wide;
    static constexpr Domain domain = Domain::exact_integer;
};

template <>
struct DomainTraits<double> {
    using Objective = double;
    static constexpr Domain domain = Domain::real;
};

template <class T>
using ObjectiveOf = typename DomainTraits<T>::Objective;

/// Minimize w^T Q w + w^T c over w in S^N.
///
/// Q is stored dense and row-major. Instances are plain values: once built
/// they are never mutated by the library, so a single instance may be shared
/// by concurrent solver runs.
template <class T>
struct Instance {
    std::size_t n = 0;
    std::vector<T> q;
    std::vector<T> c;
    LevelSet levels;
    bool psd_declared = false;

    static constexpr Domain domain = DomainTraits<T>::domain;

    T q_at(std::size_t i, std::size_t j) const { return q[i * n + j]; }
    std::span<const T> q_row(std::size_t i) const { return {q.data() + i * n, n}; }

    friend bool operator==(const Instance&, const Instance&) = default;
};

using IntInstance = Instance<Int>;
using RealInstance = Instance<double>;
using AnyInstance = std::variant<IntInstance, RealInstance>;

/// Builds an instance after checking that q is n*n and c has n entries.
template <class T>
Instance<T> make_instance(std::size_t n, std::vector<T> q, std::vector<T> c, LevelSet levels,
                          bool psd_declared);

/// A point of S^N together with its objective value.
template <class T>
struct Assignment {
    std::vector<Int> w;
    ObjectiveOf<T> objective{};

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Throws OverflowError unless sum|Q_ij| s_max^2 + sum|c_i| s_max fits with
/// headroom in a Wide. After this check every objective value and every
/// single-coordinate delta of the instance is representable.
void ensure_exact_range(const IntInstance& inst);

/// Checks length and level membership; throws DimensionMismatch / NotInLevelSet.
template <class T>
void check_assignment(const Instance<T>& inst, std::span<const Int> w);

/// w^T Q w + w^T c, exact for integer instances.
template <class T>
ObjectiveOf<T> evaluate_objective(const Instance<T>& inst, std::span<const Int> w);

}  // namespace nqp
