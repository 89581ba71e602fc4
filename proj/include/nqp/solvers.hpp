#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nqp/instance.hpp"

namespace nqp {

struct SolverBudget {
    std::uint64_t max_evaluations = 100'000'000;
    std::optional<double> max_seconds;
    std::uint64_t max_iterations = 1'000'000;
};

/// Geometric cooling from t_initial down to t_final over `steps` temperature
/// levels, with `moves_per_step` proposals at each level.
struct AnnealSchedule {
    double t_initial = 10.0;
    double t_final = 1e-3;
    std::uint64_t steps = 200;
    std::uint64_t moves_per_step = 100;

    double cooling_factor() const;
    void check() const;  ///< throws InvalidInstance if the factor is not in (0,1)
};

template <class T>
struct SolveResult {
    Assignment<T> best;
    std::uint64_t evaluations = 0;
    std::uint64_t iterations = 0;
    bool optimal_proven = false;
    std::optional<std::uint64_t> seed;

    friend bool operator==(const SolveResult&, const SolveResult&) = default;
};

/// Exhaustive enumeration of S^N in lexicographic order (first coordinate
/// most significant). Returns the lexicographically smallest minimizer.
/// Throws BudgetExceeded before starting when n^N > max_evaluations.
template <class T>
SolveResult<T> solve_brute_force(const Instance<T>& inst, const SolverBudget& budget = {});

/// Every minimizer of an integer instance, in lexicographic order.
struct ArgminSet {
    Wide value = 0;
    std::vector<std::vector<Int>> points;
};
ArgminSet brute_force_argmin_set(const IntInstance& inst, const SolverBudget& budget = {});

/// Number of points of S^N, saturating at UINT64_MAX.
std::uint64_t search_space_size(std::size_t n, std::size_t levels);

struct LocalSearchOptions {
    SolverBudget budget;
    /// Recompute the objective from scratch after every accepted move and
    /// throw InvariantViolation if it disagrees with the incremental value.
    bool verify_incremental = false;
};

/// Best-improvement coordinate descent. Each sweep visits coordinates in a
/// seed-determined random order and moves each to the level minimizing the
/// objective with the others fixed. Stops after a sweep without strict
/// improvement; the result is then a 1-swap local optimum.
template <class T>
SolveResult<T> solve_local_search(const Instance<T>& inst, std::span<const Int> init,
                                  std::uint64_t seed, const LocalSearchOptions& options = {});

/// Metropolis annealing over single-coordinate moves, starting from a
/// seed-determined uniform random point. Returns the best point seen.
template <class T>
SolveResult<T> solve_anneal(const Instance<T>& inst, const AnnealSchedule& schedule,
                            std::uint64_t seed);

enum class InnerSolver { local_search, anneal };

struct MultiStartOptions {
    std::size_t starts = 16;
    InnerSolver inner = InnerSolver::local_search;
    AnnealSchedule schedule;
    LocalSearchOptions local;
    /// 0 picks std::thread::hardware_concurrency().
    std::size_t threads = 0;
};

/// Runs the inner solver from `starts` starts; start k uses seed + k. The best
/// result wins, ties going to the lowest start index, so the outcome does not
/// depend on thread scheduling.
template <class T>
SolveResult<T> solve_multi_start(const Instance<T>& inst, std::uint64_t seed,
                                 const MultiStartOptions& options = {});

/// Uniform random point of S^N drawn from `seed`.
template <class T>
std::vector<Int> random_assignment(const Instance<T>& inst, std::uint64_t seed);

}  // namespace nqp
