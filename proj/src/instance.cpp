#include "nqp/instance.hpp"

#include <string>

#include "nqp/errors.hpp"
#include "nqp/rational.hpp"

namespace nqp {

const char* to_string(Domain d)
{
    return d == Domain::exact_integer ? "int" : "real";
}

template <class T>
Instance<T> make_instance(std::size_t n, std::vector<T> q, std::vector<T> c, LevelSet levels,
                          bool psd_declared)
{
    if (n == 0) throw DimensionMismatch("instance dimension must be positive");
    if (q.size() != n * n)
        throw DimensionMismatch("Q has " + std::to_string(q.size()) + " entries, expected " +
                                std::to_string(n * n));
    if (c.size() != n)
        throw DimensionMismatch("c has " + std::to_string(c.size()) + " entries, expected " + std::to_string(n));
    return Instance<T>{n, std::move(q), std::move(c), std::move(levels), psd_declared};
}

void ensure_exact_range(const IntInstance& inst)
{
    // Bound in arbitrary precision, then compare against 2^120 so that the
    // deltas used by the solvers (at most 4x the bound) also fit.
    const BigInt smax = inst.levels.max_abs();
    BigInt bound = 0;
    for (Int v : inst.q) bound += abs(BigInt(v));
    bound *= smax * smax;
    BigInt lin = 0;
    for (Int v : inst.c) lin += abs(BigInt(v));
    bound += lin * smax;
    static const BigInt limit = BigInt(1) << 120;
    if (bound >= limit)
        throw OverflowError("instance coefficients too large for exact evaluation (bound " + to_string(bound) + ")");
}

template <class T>
void check_assignment(const Instance<T>& inst, std::span<const Int> w)
{
    if (w.size() != inst.n)
        throw DimensionMismatch("assignment has length " + std::to_string(w.size()) + ", expected " +
                                std::to_string(inst.n));
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!inst.levels.contains(w[i]))
            throw NotInLevelSet("component " + std::to_string(i) + " = " + std::to_string(w[i]) +
                                " is not in the level set");
}

template <class T>
ObjectiveOf<T> evaluate_objective(const Instance<T>& inst, std::span<const Int> w)
{
    using Obj = ObjectiveOf<T>;
    check_assignment(inst, w);
    if constexpr (std::is_same_v<T, Int>) ensure_exact_range(inst);
    Obj total = 0;
    for (std::size_t i = 0; i < inst.n; ++i) {
        Obj row = 0;
        for (std::size_t j = 0; j < inst.n; ++j) row += Obj(inst.q_at(i, j)) * Obj(w[j]);
        total += Obj(w[i]) * (row + Obj(inst.c[i]));
    }
    return total;
}

template IntInstance make_instance(std::size_t, std::vector<Int>, std::vector<Int>, LevelSet, bool);
template RealInstance make_instance(std::size_t, std::vector<double>, std::vector<double>, LevelSet, bool);
template void check_assignment(const IntInstance&, std::span<const Int>);
template void check_assignment(const RealInstance&, std::span<const Int>);
template Wide evaluate_objective(const IntInstance&, std::span<const Int>);
template double evaluate_objective(const RealInstance&, std::span<const Int>);

}  // namespace nqp
