#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nqp/reduction.hpp"
#include "nqp/solvers.hpp"

namespace nqp {

/// Outcome of brute-force checking one reduction.
struct ReductionCheck {
    Reduction reduction;
    Wide ubqp_optimum = 0;
    Wide unqp_optimum = 0;
    std::size_t ubqp_minimizers = 0;
    std::size_t unqp_minimizers = 0;

    bool sound = false;          ///< argmin(UNQP) in {s1,s2}^N and decodes onto argmin(UBQP)
    bool values_agree = false;   ///< certificate maps the UNQP optimum to the UBQP optimum
    bool exhaustive = false;     ///< the checks below were run
    bool identity_holds = false; ///< reduced(t) == scale * ubqp(decode t) + offset on {s1,s2}^N
    bool separated = false;      ///< min over non-binary points > max over binary points
    bool penalty_dichotomy = false;
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
};

/// Reduces `ubqp` to `levels`, brute-forces both instances and compares their
/// minimizer sets. With `exhaustive`, also walks all of S^N to check the
/// objective identity, strict separation and the penalty dichotomy.
ReductionCheck check_reduction(const IntInstance& ubqp, const LevelSet& levels, bool exhaustive,
                               const SolverBudget& budget = {}, const ReductionOptions& options = {});

/// Calls visit(point) for every point of levels^n in lexicographic order.
template <class Visit>
void for_each_point(std::size_t n, const LevelSet& levels, Visit&& visit)
{
    std::vector<std::size_t> digit(n, 0);
    std::vector<Int> point(n, levels[0]);
    for (;;) {
        visit(static_cast<const std::vector<Int>&>(point));
        std::size_t p = n;
        while (p > 0 && digit[p - 1] + 1 == levels.size()) {
            --p;
            digit[p] = 0;
            point[p] = levels[0];
        }
        if (p == 0) return;
        --p;
        point[p] = levels[++digit[p]];
    }
}

}  // namespace nqp
