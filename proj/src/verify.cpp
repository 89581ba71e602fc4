#include "nqp/verify.hpp"

#include <algorithm>
#include <optional>

namespace nqp {

ReductionCheck check_reduction(const IntInstance& ubqp, const LevelSet& levels, bool exhaustive,
                               const SolverBudget& budget, const ReductionOptions& options)
{
    ReductionCheck check{reduce_ubqp_to_unqp(ubqp, levels, options), 0, 0, 0, 0, false, false, false, false, false, false, {}};
    const auto& reduced = check.reduction.instance;
    const auto& cert = check.reduction.certificate;

    const ArgminSet source = brute_force_argmin_set(ubqp, budget);
    const ArgminSet target = brute_force_argmin_set(reduced, budget);
    check.ubqp_optimum = source.value;
    check.unqp_optimum = target.value;
    check.ubqp_minimizers = source.points.size();
    check.unqp_minimizers = target.points.size();

    std::vector<std::vector<Int>> decoded;
    bool all_binary = true;
    for (const auto& t : target.points) {
        try {
            decoded.push_back(cert.decode(t));
        } catch (const NotBinary&) {
            all_binary = false;
        }
    }
    std::sort(decoded.begin(), decoded.end());
    check.sound = all_binary && decoded == source.points;
    if (!all_binary) check.failures.push_back("a reduced minimizer uses a level outside {s1, s2}");
    else if (!check.sound) check.failures.push_back("decoded minimizers differ from the UBQP minimizers");

    check.values_agree = cert.ubqp_objective(to_big(target.value)) == Rational(to_big(source.value));
    if (!check.values_agree) check.failures.push_back("certificate does not map the UNQP optimum onto the UBQP optimum");

    if (!exhaustive) return check;
    check.exhaustive = true;
    if (search_space_size(ubqp.n, levels.size()) > budget.max_evaluations)
        throw BudgetExceeded("exhaustive reduction check exceeds the evaluation budget");

    check.identity_holds = true;
    check.penalty_dichotomy = true;
    std::optional<Wide> max_binary;
    std::optional<Wide> min_other;
    for_each_point(ubqp.n, levels, [&](const std::vector<Int>& t) {
        const Wide f = evaluate_objective(reduced, t);
        const BigInt g = penalty_g(t, cert.s1, cert.s2);
        const bool binary = std::all_of(t.begin(), t.end(), [&](Int v) { return v == cert.s1 || v == cert.s2; });
        if (binary) {
            if (g != 0) check.penalty_dichotomy = false;
            const Wide source_f = evaluate_objective(ubqp, cert.decode(t));
            if (to_big(f) != cert.scale * to_big(source_f) + cert.objective_offset)
                check.identity_holds = false;
            if (!max_binary || f > *max_binary) max_binary = f;
        } else {
            const BigInt floor_g = cert.penalty ? cert.penalty->l_g : BigInt(1);
            if (g < floor_g) check.penalty_dichotomy = false;
            if (!min_other || f < *min_other) min_other = f;
        }
    });
    check.separated = !min_other || *min_other > *max_binary;
    if (!check.identity_holds) check.failures.push_back("objective identity fails on {s1,s2}^N");
    if (!check.separated) check.failures.push_back("a non-binary point scores no worse than the worst binary point");
    if (!check.penalty_dichotomy) check.failures.push_back("penalty G is not zero exactly on binary points");
    return check;
}

}  // namespace nqp
