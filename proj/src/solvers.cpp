#include "nqp/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "nqp/errors.hpp"

namespace nqp {

namespace {

// Current point plus g = Q w, so that a single-coordinate move costs O(1) to
// price and O(N) to apply.
template <class T>
class MoveState {
public:
    using Obj = ObjectiveOf<T>;

    MoveState(const Instance<T>& inst, std::span<const Int> w) : inst_(inst), w_(w.begin(), w.end()), g_(inst.n)
    {
        for (std::size_t i = 0; i < inst_.n; ++i) {
            Obj row = 0;
            for (std::size_t j = 0; j < inst_.n; ++j) row += Obj(inst_.q_at(i, j)) * Obj(w_[j]);
            g_[i] = row;
        }
        f_ = recompute();
    }

    Obj delta(std::size_t i, Int v) const
    {
        const Obj step = Obj(v) - Obj(w_[i]);
        return step * (Obj(2) * g_[i] + Obj(inst_.q_at(i, i)) * step + Obj(inst_.c[i]));
    }

    void apply(std::size_t i, Int v, Obj d)
    {
        const Obj step = Obj(v) - Obj(w_[i]);
        for (std::size_t j = 0; j < inst_.n; ++j) g_[j] += Obj(inst_.q_at(j, i)) * step;
        w_[i] = v;
        f_ += d;
    }

    void apply(std::size_t i, Int v) { apply(i, v, delta(i, v)); }

    Obj recompute() const
    {
        Obj total = 0;
        for (std::size_t i = 0; i < inst_.n; ++i) total += Obj(w_[i]) * (g_[i] + Obj(inst_.c[i]));
        return total;
    }

    Obj objective() const { return f_; }
    const std::vector<Int>& point() const { return w_; }
    Int at(std::size_t i) const { return w_[i]; }

private:
    const Instance<T>& inst_;
    std::vector<Int> w_;
    std::vector<Obj> g_;
    Obj f_{};
};

template <class T>
void prepare(const Instance<T>& inst)
{
    if constexpr (std::is_same_v<T, Int>) ensure_exact_range(inst);
}

// Strict improvement. Real objectives accumulate rounding in the incremental
// updates, so improvements below 1e-12 relative are treated as ties.
template <class Obj>
bool improves(Obj d, Obj f)
{
    if constexpr (std::is_floating_point_v<Obj>)
        return d < -1e-12 * std::max<Obj>(1.0, std::abs(f));
    else
        return d < 0;
}

class Deadline {
public:
    explicit Deadline(std::optional<double> seconds) : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}

    bool passed() const
    {
        if (!seconds_) return false;
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        return elapsed.count() > *seconds_;
    }

private:
    std::optional<double> seconds_;
    std::chrono::steady_clock::time_point start_;
};

// Lexicographic walk over S^N; `visit(state)` is called once per point.
template <class T, class Visit>
std::uint64_t enumerate(const Instance<T>& inst, const SolverBudget& budget, Visit&& visit)
{
    const std::size_t n = inst.n;
    const std::size_t levels = inst.levels.size();
    const std::uint64_t total = search_space_size(n, levels);
    if (total > budget.max_evaluations)
        throw BudgetExceeded("brute force needs " + std::to_string(levels) + "^" + std::to_string(n) +
                             " evaluations, budget is " + std::to_string(budget.max_evaluations));
    prepare(inst);

    std::vector<std::size_t> digit(n, 0);
    std::vector<Int> start(n, inst.levels.front());
    MoveState<T> state(inst, start);
    Deadline deadline(budget.max_seconds);
    std::uint64_t count = 0;
    for (;;) {
        visit(state);
        ++count;
        if ((count & 0xffff) == 0 && deadline.passed())
            throw BudgetExceeded("brute force exceeded the time budget");
        std::size_t p = n;
        while (p > 0 && digit[p - 1] + 1 == levels) {
            --p;
            digit[p] = 0;
            state.apply(p, inst.levels[0]);
        }
        if (p == 0) break;
        --p;
        ++digit[p];
        state.apply(p, inst.levels[digit[p]]);
    }
    return count;
}

}  // namespace

double AnnealSchedule::cooling_factor() const
{
    return std::pow(t_final / t_initial, 1.0 / static_cast<double>(steps));
}

void AnnealSchedule::check() const
{
    if (!(t_initial > 0.0) || !(t_final > 0.0) || !(t_final < t_initial))
        throw InvalidInstance("anneal schedule: need 0 < t_final < t_initial");
    if (steps == 0 || moves_per_step == 0) throw InvalidInstance("anneal schedule: steps and moves must be positive");
    const double alpha = cooling_factor();
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInstance("anneal schedule: cooling factor outside (0,1)");
}

std::uint64_t search_space_size(std::size_t n, std::size_t levels)
{
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > std::numeric_limits<std::uint64_t>::max() / levels) return std::numeric_limits<std::uint64_t>::max();
        total *= levels;
    }
    return total;
}

template <class T>
SolveResult<T> solve_brute_force(const Instance<T>& inst, const SolverBudget& budget)
{
    using Obj = ObjectiveOf<T>;
    std::vector<Int> best;
    Obj best_f{};
    const auto count = enumerate(inst, budget, [&](const MoveState<T>& s) {
        if (best.empty() || s.objective() < best_f) {
            best = s.point();
            best_f = s.objective();
        }
    });
    SolveResult<T> result;
    result.best.objective = evaluate_objective(inst, best);
    result.best.w = std::move(best);
    result.evaluations = count;
    result.iterations = count;
    result.optimal_proven = true;
    return result;
}

ArgminSet brute_force_argmin_set(const IntInstance& inst, const SolverBudget& budget)
{
    ArgminSet set;
    enumerate(inst, budget, [&](const MoveState<Int>& s) {
        if (set.points.empty() || s.objective() < set.value) {
            set.value = s.objective();
            set.points.clear();
            set.points.push_back(s.point());
        } else if (s.objective() == set.value) {
            set.points.push_back(s.point());
        }
    });
    return set;
}

template <class T>
std::vector<Int> random_assignment(const Instance<T>& inst, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> level(0, inst.levels.size() - 1);
    std::vector<Int> w(inst.n);
    for (auto& v : w) v = inst.levels[level(rng)];
    return w;
}

template <class T>
SolveResult<T> solve_local_search(const Instance<T>& inst, std::span<const Int> init, std::uint64_t seed,
                                  const LocalSearchOptions& options)
{
    check_assignment(inst, init);
    prepare(inst);

    MoveState<T> state(inst, init);
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(inst.n);
    std::iota(order.begin(), order.end(), std::size_t{0});

    SolveResult<T> result;
    result.seed = seed;
    result.evaluations = 1;
    Deadline deadline(options.budget.max_seconds);

    for (std::uint64_t sweep = 1; sweep <= options.budget.max_iterations; ++sweep) {
        std::shuffle(order.begin(), order.end(), rng);
        bool improved = false;
        for (std::size_t i : order) {
            const Int current = state.at(i);
            Int best_v = current;
            ObjectiveOf<T> best_d = 0;
            for (Int v : inst.levels.values()) {
                if (v == current) continue;
                const auto d = state.delta(i, v);
                ++result.evaluations;
                if (d < best_d && improves(d, state.objective())) {
                    best_d = d;
                    best_v = v;
                }
            }
            if (best_v == current) continue;
            const auto before = state.objective();
            state.apply(i, best_v, best_d);
            improved = true;
            if (options.verify_incremental) {
                const auto fresh = evaluate_objective(inst, state.point());
                bool mismatch;
                if constexpr (std::is_same_v<T, Int>)
                    mismatch = fresh != state.objective() || fresh - before != best_d;
                else
                    mismatch = std::abs(fresh - state.objective()) > 1e-9 * std::max(1.0, std::abs(fresh));
                if (mismatch) throw InvariantViolation("local search: incremental objective disagrees with recomputation");
            }
        }
        result.iterations = sweep;
        if (!improved) break;
        if (result.evaluations >= options.budget.max_evaluations || deadline.passed()) break;
    }

    result.best.w = state.point();
    result.best.objective = evaluate_objective(inst, result.best.w);
    return result;
}

template <class T>
SolveResult<T> solve_anneal(const Instance<T>& inst, const AnnealSchedule& schedule, std::uint64_t seed)
{
    schedule.check();
    prepare(inst);

    std::mt19937_64 rng(seed);
    const std::size_t levels = inst.levels.size();
    std::uniform_int_distribution<std::size_t> pick_level(0, levels - 1);
    std::vector<Int> init(inst.n);
    for (auto& v : init) v = inst.levels[pick_level(rng)];

    MoveState<T> state(inst, init);
    std::vector<Int> best = state.point();
    auto best_f = state.objective();

    std::uniform_int_distribution<std::size_t> pick_coord(0, inst.n - 1);
    std::uniform_int_distribution<std::size_t> pick_other(0, levels - 2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SolveResult<T> result;
    result.seed = seed;
    result.evaluations = 1;
    const double alpha = schedule.cooling_factor();
    double temperature = schedule.t_initial;
    for (std::uint64_t step = 0; step < schedule.steps; ++step) {
        for (std::uint64_t m = 0; m < schedule.moves_per_step; ++m) {
            const std::size_t i = pick_coord(rng);
            const std::size_t current = *inst.levels.index_of(state.at(i));
            std::size_t k = pick_other(rng);
            if (k >= current) ++k;
            const Int v = inst.levels[k];
            const auto d = state.delta(i, v);
            ++result.evaluations;
            bool accept = d <= 0;
            if (!accept) accept = unit(rng) < std::exp(-static_cast<double>(d) / temperature);
            if (!accept) continue;
            state.apply(i, v, d);
            if (state.objective() < best_f) {
                best_f = state.objective();
                best = state.point();
            }
        }
        temperature *= alpha;
    }
    result.iterations = schedule.steps;
    result.best.objective = evaluate_objective(inst, best);
    result.best.w = std::move(best);
    return result;
}

template <class T>
SolveResult<T> solve_multi_start(const Instance<T>& inst, std::uint64_t seed, const MultiStartOptions& options)
{
    if (options.starts == 0) throw InvalidInstance("multi-start: starts must be >= 1");
    if (options.inner == InnerSolver::anneal) options.schedule.check();
    prepare(inst);

    const auto run_start = [&](std::size_t k) {
        const std::uint64_t s = seed + k;
        if (options.inner == InnerSolver::anneal) return solve_anneal(inst, options.schedule, s);
        const auto init = random_assignment(inst, s);
        return solve_local_search(inst, init, s, options.local);
    };

    std::vector<std::optional<SolveResult<T>>> results(options.starts);
    std::vector<std::exception_ptr> errors(options.starts);
    std::size_t threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, options.starts);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t k = next++; k < options.starts; k = next++) {
            try {
                results[k] = run_start(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    SolveResult<T> best;
    best.seed = seed;
    bool have = false;
    std::uint64_t evaluations = 0;
    std::uint64_t iterations = 0;
    for (std::size_t k = 0; k < options.starts; ++k) {
        if (errors[k]) std::rethrow_exception(errors[k]);
        const auto& r = *results[k];
        evaluations += r.evaluations;
        iterations += r.iterations;
        if (!have || r.best.objective < best.best.objective) {
            best.best = r.best;
            have = true;
        }
    }
    best.evaluations = evaluations;
    best.iterations = iterations;
    return best;
}

template SolveResult<Int> solve_brute_force(const IntInstance&, const SolverBudget&);
template SolveResult<double> solve_brute_force(const RealInstance&, const SolverBudget&);
template std::vector<Int> random_assignment(const IntInstance&, std::uint64_t);
template std::vector<Int> random_assignment(const RealInstance&, std::uint64_t);
template SolveResult<Int> solve_local_search(const IntInstance&, std::span<const Int>, std::uint64_t,
                                             const LocalSearchOptions&);
template SolveResult<double> solve_local_search(const RealInstance&, std::span<const Int>, std::uint64_t,
                                                const LocalSearchOptions&);
template SolveResult<Int> solve_anneal(const IntInstance&, const AnnealSchedule&, std::uint64_t);
template SolveResult<double> solve_anneal(const RealInstance&, const AnnealSchedule&, std::uint64_t);
template SolveResult<Int> solve_multi_start(const IntInstance&, std::uint64_t, const MultiStartOptions&);
template SolveResult<double> solve_multi_start(const RealInstance&, std::uint64_t, const MultiStartOptions&);

}  // namespace nqp
