#include <catch_amalgamated.hpp>

#include "nqp/errors.hpp"
#include "nqp/generate.hpp"
#include "nqp/solvers.hpp"
#include "oracles.hpp"

using namespace nqp;

namespace {

IntInstance make(std::size_t n, std::vector<Int> q, std::vector<Int> c, std::vector<Int> s)
{
    return make_instance(n, std::move(q), std::move(c), LevelSet(std::move(s)), true);
}

const IntInstance& small_ubqp()
{
    static const IntInstance inst = make(2, {1, 0, 0, 1}, {-3, 1}, {0, 1});
    return inst;
}

}  // namespace

TEST_CASE("brute force examples", "[brute]")
{
    const auto r = solve_brute_force(small_ubqp());
    CHECK(r.best.w == std::vector<Int>{1, 0});
    CHECK(r.best.objective == -2);
    CHECK(r.optimal_proven);
    CHECK(r.evaluations == 4);
    CHECK_FALSE(r.seed);

    const auto zero = make(3, std::vector<Int>(9, 0), {0, 0, 0}, {-2, 5, 7});
    const auto z = solve_brute_force(zero);
    CHECK(z.best.w == std::vector<Int>{-2, -2, -2});
    CHECK(z.best.objective == 0);

    const auto reduced = make(1, {12}, {-13}, {0, 1, 2});
    const auto b = solve_brute_force(reduced);
    CHECK(b.best.w == std::vector<Int>{1});
    CHECK(b.best.objective == -1);
}

TEST_CASE("brute force refuses oversize searches", "[brute]")
{
    const auto inst = generate_random_instance(10, LevelSet({0, 1, 2}), 1, 2);
    SolverBudget budget;
    budget.max_evaluations = 1000;
    CHECK_THROWS_AS(solve_brute_force(inst, budget), BudgetExceeded);
    CHECK(search_space_size(64, 3) == std::numeric_limits<std::uint64_t>::max());
    CHECK(search_space_size(12, 3) == 531441);
}

TEST_CASE("brute force matches recursive enumeration, including ties", "[brute][property]")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + trial % 5;
        const auto levels = generate_random_level_set(2 + trial % 3, -4, 4, rng());
        // Small entry bound makes ties frequent.
        const auto inst = generate_random_instance(n, levels, rng(), 1);
        const auto want = oracle::argmin(inst);
        const auto got = solve_brute_force(inst);
        REQUIRE(to_big(got.best.objective) == want.value);
        REQUIRE(got.best.w == want.points.front());
        const auto set = brute_force_argmin_set(inst);
        REQUIRE(set.points == want.points);
    }
}

TEST_CASE("local search examples", "[local]")
{
    SECTION("the optimum of a strictly convex 1-D instance is a fixed point")
    {
        const auto inst = make(1, {12}, {-13}, {0, 1, 2});
        const std::vector<Int> init{1};
        const auto r = solve_local_search(inst, init, 3);
        CHECK(r.best.w == init);
        CHECK(r.iterations == 1);
    }
    SECTION("descends from the wrong end")
    {
        const auto inst = make(1, {12}, {-13}, {0, 1, 2});
        const std::vector<Int> init{2};
        const auto r = solve_local_search(inst, init, 3);
        CHECK(r.best.w == std::vector<Int>{1});
        CHECK(r.best.objective == -1);
    }
    SECTION("invalid starts")
    {
        const std::vector<Int> bad{5, 0};
        const std::vector<Int> short_init{0};
        CHECK_THROWS_AS(solve_local_search(small_ubqp(), bad, 0), NotInLevelSet);
        CHECK_THROWS_AS(solve_local_search(small_ubqp(), short_init, 0), DimensionMismatch);
    }
}

TEST_CASE("local search properties", "[local][property]")
{
    std::mt19937_64 rng(4);
    LocalSearchOptions checked;
    checked.verify_incremental = true;
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 2 + trial % 7;
        const auto levels = generate_random_level_set(2 + trial % 4, -5, 5, rng());
        const auto inst = generate_random_instance(n, levels, rng(), 4);
        const auto init = random_assignment(inst, rng());
        const auto seed = rng();
        const auto r = solve_local_search(inst, init, seed, checked);

        REQUIRE(r.best.objective <= evaluate_objective(inst, init));
        REQUIRE(r.best.objective == evaluate_objective(inst, r.best.w));
        REQUIRE(r.best.objective >= solve_brute_force(inst).best.objective);

        // 1-swap optimality.
        for (std::size_t i = 0; i < n; ++i) {
            auto w = r.best.w;
            for (Int v : levels.values()) {
                w[i] = v;
                REQUIRE(evaluate_objective(inst, w) >= r.best.objective);
            }
        }
        // Fixed point and determinism.
        const auto again = solve_local_search(inst, r.best.w, seed);
        REQUIRE(again.best.w == r.best.w);
        REQUIRE(solve_local_search(inst, init, seed, checked) == r);
    }
}

TEST_CASE("anneal", "[anneal]")
{
    SECTION("frozen schedule is a randomized descent")
    {
        std::mt19937_64 rng(12);
        const AnnealSchedule frozen{1e-12, 1e-13, 20, 50};
        for (int trial = 0; trial < 30; ++trial) {
            const auto inst = generate_random_instance(6, LevelSet({-1, 0, 1}), rng(), 3);
            const auto seed = rng();
            const auto r = solve_anneal(inst, frozen, seed);
            // The start is the first draw of the same generator.
            std::mt19937_64 start_rng(seed);
            std::uniform_int_distribution<std::size_t> pick(0, 2);
            std::vector<Int> start(6);
            for (auto& v : start) v = inst.levels[pick(start_rng)];
            CHECK(r.best.objective <= evaluate_objective(inst, start));
        }
    }
    SECTION("determinism")
    {
        const auto inst = generate_random_instance(8, LevelSet({0, 1, 3}), 99, 4);
        const AnnealSchedule s{5.0, 0.01, 50, 40};
        CHECK(solve_anneal(inst, s, 7) == solve_anneal(inst, s, 7));
    }
    SECTION("finds the N=2 optimum for at least 99 of 100 seeds")
    {
        const AnnealSchedule s{2.0, 0.01, 50, 20};
        int hits = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed)
            hits += solve_anneal(small_ubqp(), s, seed).best.objective == -2;
        CHECK(hits >= 99);
    }
    SECTION("bad schedules")
    {
        CHECK_THROWS_AS(solve_anneal(small_ubqp(), AnnealSchedule{1.0, 2.0, 10, 10}, 0), InvalidInstance);
        CHECK_THROWS_AS(solve_anneal(small_ubqp(), AnnealSchedule{1.0, 0.5, 0, 10}, 0), InvalidInstance);
    }
    SECTION("never below the oracle")
    {
        std::mt19937_64 rng(21);
        for (int trial = 0; trial < 30; ++trial) {
            const auto inst = generate_random_instance(5, LevelSet({-2, 0, 1}), rng(), 3);
            CHECK(solve_anneal(inst, AnnealSchedule{}, rng()).best.objective >= solve_brute_force(inst).best.objective);
        }
    }
}

TEST_CASE("multi-start", "[multi]")
{
    const auto inst = generate_random_instance(9, LevelSet({-1, 0, 2}), 5, 3);

    SECTION("one start equals a single inner run")
    {
        MultiStartOptions one;
        one.starts = 1;
        const auto r = solve_multi_start(inst, 40, one);
        const auto single = solve_local_search(inst, random_assignment(inst, 40), 40);
        CHECK(r == single);

        one.inner = InnerSolver::anneal;
        CHECK(solve_multi_start(inst, 40, one) == solve_anneal(inst, one.schedule, 40));
    }
    SECTION("more starts never hurt and thread count does not matter")
    {
        MultiStartOptions options;
        options.threads = 1;
        ObjectiveOf<Int> previous = 0;
        for (std::size_t starts = 1; starts <= 12; ++starts) {
            options.starts = starts;
            const auto r = solve_multi_start(inst, 1000, options);
            if (starts > 1) CHECK(r.best.objective <= previous);
            previous = r.best.objective;
        }
        options.starts = 12;
        const auto serial = solve_multi_start(inst, 1000, options);
        options.threads = 4;
        CHECK(solve_multi_start(inst, 1000, options) == serial);
    }
    SECTION("zero starts is an error")
    {
        MultiStartOptions none;
        none.starts = 0;
        CHECK_THROWS_AS(solve_multi_start(inst, 0, none), InvalidInstance);
    }
}

TEST_CASE("solvers work on real-valued instances", "[real]")
{
    const auto inst = make_instance<double>(2, {1.0, 0.25, 0.25, 2.0}, {-1.5, 0.5}, LevelSet({-1, 0, 1}), true);
    const auto b = solve_brute_force(inst);
    double best = std::numeric_limits<double>::infinity();
    oracle::enumerate(2, {-1, 0, 1}, [&](const std::vector<Int>& w) { best = std::min(best, oracle::objective(inst, w)); });
    CHECK(b.best.objective == Catch::Approx(best).margin(1e-12));
    const auto l = solve_local_search(inst, std::vector<Int>{-1, 1}, 1);
    CHECK(l.best.objective >= b.best.objective - 1e-12);
    const auto a = solve_anneal(inst, AnnealSchedule{}, 1);
    CHECK(a.best.objective == Catch::Approx(best).margin(1e-12));
}
