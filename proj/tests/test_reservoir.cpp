#include <catch_amalgamated.hpp>

#include "nqp/errors.hpp"
#include "nqp/reservoir.hpp"
#include "nqp/validate.hpp"
#include "oracles.hpp"

using namespace nqp;
using namespace nqp::reservoir;

namespace {

StateMatrix identity_states(Eigen::VectorXd y)
{
    StateMatrix s;
    s.x = MatrixXd::Identity(2, 2);
    s.y = std::move(y);
    return s;
}

MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal;
    MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
    return m;
}

}  // namespace

TEST_CASE("make_esn", "[esn]")
{
    SECTION("spectral radius is rescaled, checked by subspace iteration")
    {
        for (std::uint64_t seed : {1, 2, 3}) {
            const auto esn = make_esn({30, 1, seed, 0.9, 0.5, 0.1});
            CHECK(oracle::subspace_spectral_radius(esn.w) == Catch::Approx(0.9).epsilon(1e-6));
            CHECK(esn.w_in.cwiseAbs().maxCoeff() <= 0.5);
        }
    }
    SECTION("deterministic")
    {
        const auto a = make_esn({20, 2, 5, 0.8, 0.3, 0.2});
        const auto b = make_esn({20, 2, 5, 0.8, 0.3, 0.2});
        CHECK(a.w == b.w);
        CHECK(a.w_in == b.w_in);
    }
    SECTION("1x1 with full density")
    {
        const auto esn = make_esn({1, 1, 9, 0.7, 0.5, 1.0});
        CHECK(std::abs(esn.w(0, 0)) == Catch::Approx(0.7));
    }
    SECTION("zero-radius draws are redrawn")
    {
        // Very sparse matrices are frequently nilpotent.
        unsigned redrawn = 0;
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const auto esn = make_esn({4, 1, seed, 0.9, 0.5, 0.15});
            CHECK(spectral_radius(esn.w) == Catch::Approx(0.9).epsilon(1e-9));
            redrawn += esn.regenerations;
        }
        CHECK(redrawn > 0);
    }
    SECTION("invalid arguments")
    {
        CHECK_THROWS_AS(make_esn({0, 1, 0, 0.9, 0.5, 0.1}), InvalidInstance);
        CHECK_THROWS_AS(make_esn({3, 1, 0, 0.0, 0.5, 0.1}), InvalidInstance);
        CHECK_THROWS_AS(make_esn({3, 1, 0, 0.9, 0.5, 1.5}), InvalidInstance);
    }
}

TEST_CASE("drive_reservoir", "[esn]")
{
    SECTION("zero input weights keep the zero state")
    {
        auto esn = make_esn({10, 1, 3, 0.9, 0.5, 0.3});
        esn.w_in.setZero();
        const MatrixXd u = MatrixXd::Constant(1, 20, 0.7);
        const auto s = drive_reservoir(esn, u, 5);
        CHECK(s.x.cols() == 15);
        CHECK(s.x.isZero(0.0));
    }
    SECTION("single-neuron evaluation")
    {
        EsnParams esn;
        esn.n = 1;
        esn.k_in = 1;
        esn.w = MatrixXd::Zero(1, 1);
        esn.w_in = MatrixXd::Ones(1, 1);
        const MatrixXd u = MatrixXd::Constant(1, 1, 0.5);
        const auto s = drive_reservoir(esn, u, 0);
        CHECK(s.x(0, 0) == Catch::Approx(0.46211715726).margin(1e-9));
    }
    SECTION("states stay in (-1, 1)")
    {
        const auto esn = make_esn({25, 1, 4, 0.9, 5.0, 0.2});
        const auto task = delay_recall_task(300, 2, 4);
        const auto s = drive_reservoir(esn, task.u * 10.0, 10);
        CHECK(s.x.cwiseAbs().maxCoeff() <= 1.0);
        CHECK(s.x.allFinite());
    }
    SECTION("echo state property: initial state is forgotten")
    {
        const auto esn = make_esn({30, 1, 6, 0.9, 0.5, 0.1});
        const auto task = delay_recall_task(500, 2, 6);
        std::mt19937_64 rng(6);
        Eigen::VectorXd x0 = random_matrix(30, 1, rng);
        x0.normalize();
        const auto a = drive_reservoir(esn, task.u, 50);
        const auto b = drive_reservoir(esn, task.u, 50, x0);
        CHECK((a.x.rightCols(1) - b.x.rightCols(1)).norm() < 1e-6);
    }
    SECTION("dimension checks")
    {
        const auto esn = make_esn({5, 2, 1, 0.9, 0.5, 0.5});
        CHECK_THROWS_AS(drive_reservoir(esn, MatrixXd::Zero(1, 10), 0), DimensionMismatch);
        CHECK_THROWS_AS(drive_reservoir(esn, MatrixXd::Zero(2, 10), 10), InvalidInstance);
    }
}

TEST_CASE("build_regression_qp", "[qp]")
{
    SECTION("identity states")
    {
        Eigen::VectorXd y(2);
        y << 1, 0;
        const auto inst = build_regression_qp(identity_states(y), LevelSet({-1, 0, 1}));
        CHECK(inst.q == std::vector<double>{1, 0, 0, 1});
        CHECK(inst.c == std::vector<double>{-2, 0});
        CHECK(inst.domain == Domain::real);
    }
    SECTION("zero target gives zero linear term")
    {
        std::mt19937_64 rng(2);
        StateMatrix s{random_matrix(4, 9, rng), Eigen::VectorXd::Zero(9), 0};
        const auto inst = build_regression_qp(s, LevelSet({-1, 0, 1}));
        for (double v : inst.c) CHECK(v == 0.0);
        CHECK(continuous_qp_minimum(s) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("QP and least-squares objectives agree up to ||y||^2")
    {
        std::mt19937_64 rng(10);
        for (int trial = 0; trial < 10; ++trial) {
            StateMatrix s{random_matrix(5, 12, rng), random_matrix(12, 1, rng), 0};
            const auto inst = build_regression_qp(s, LevelSet({-2, -1, 0, 1, 2}));
            CHECK(validate_instance(inst).empty());
            CHECK(smallest_eigenvalue(inst.q, inst.n) >= -1e-8 * std::abs(s.x.squaredNorm()));
            std::uniform_int_distribution<Int> pick(-2, 2);
            std::vector<Int> w(5);
            for (auto& v : w) v = pick(rng);
            Eigen::VectorXd wd(5);
            for (int i = 0; i < 5; ++i) wd(i) = static_cast<double>(w[static_cast<std::size_t>(i)]);
            const double lhs = evaluate_objective(inst, w) + s.y.squaredNorm();
            const double rhs = regression_loss(s, wd);
            CHECK(lhs == Catch::Approx(rhs).epsilon(1e-9));
        }
    }
}

TEST_CASE("solve_continuous_ridge", "[ridge]")
{
    Eigen::VectorXd y(2);
    y << 1, 0;
    const auto exact = solve_continuous_ridge(identity_states(y), 0.0);
    CHECK(exact.w_out(0) == Catch::Approx(1.0));
    CHECK(exact.w_out(1) == Catch::Approx(0.0).margin(1e-15));
    CHECK(exact.nmse == Catch::Approx(0.0).margin(1e-15));

    const auto shrunk = solve_continuous_ridge(identity_states(y), 1.0);
    CHECK(shrunk.w_out(0) == Catch::Approx(0.5));
    CHECK(shrunk.w_out(1) == Catch::Approx(0.0).margin(1e-15));

    std::mt19937_64 rng(1);
    StateMatrix s{random_matrix(6, 40, rng), random_matrix(40, 1, rng), 0};
    const double base = solve_continuous_ridge(s, 0.0).nmse;
    for (double ridge : {1e-6, 1e-3, 1.0, 10.0}) CHECK(solve_continuous_ridge(s, ridge).nmse >= base - 1e-12);

    StateMatrix singular{MatrixXd::Ones(2, 5), Eigen::VectorXd::LinSpaced(5, 0, 1), 0};
    CHECK_THROWS_AS(solve_continuous_ridge(singular, 0.0), SingularSystem);
    CHECK_NOTHROW(solve_continuous_ridge(singular, 1e-3));
}

TEST_CASE("nmse", "[nmse]")
{
    Eigen::VectorXd t(4);
    t << 1, 2, 3, 6;
    CHECK(nmse(t, t) == 0.0);
    CHECK(nmse(Eigen::VectorXd::Constant(4, t.mean()), t) == Catch::Approx(1.0));
    Eigen::VectorXd p(2), q(2);
    p << 0, 0;
    q << 1, -1;
    CHECK(nmse(p, q) == Catch::Approx(1.0));
    CHECK_THROWS_AS(nmse(p, Eigen::VectorXd::Constant(2, 3.0)), InvalidInstance);
    CHECK_THROWS_AS(nmse(Eigen::VectorXd::Zero(3), q), DimensionMismatch);
}

TEST_CASE("train_discrete_readout", "[discrete]")
{
    SECTION("continuous optimum already on the grid")
    {
        // y = w*^T X with w* = (1, -1, 0) and max|w*| = max|S|, so no rescaling is needed.
        std::mt19937_64 rng(31);
        StateMatrix s{random_matrix(3, 20, rng), {}, 0};
        Eigen::Vector3d w_star(1, -1, 0);
        s.y = s.x.transpose() * w_star;
        DiscreteTrainingOptions options;
        options.solver = DiscreteSolver::brute_force;
        options.ridge = 0.0;
        const auto r = train_discrete_readout(s, LevelSet({-1, 0, 1}), options);
        CHECK(r.state_scale == Catch::Approx(1.0).epsilon(1e-12));
        CHECK(r.discrete.w_out == w_star);
        CHECK(r.gap == Catch::Approx(0.0).margin(1e-9));
    }
    SECTION("gap is never negative")
    {
        for (auto solver : {DiscreteSolver::brute_force, DiscreteSolver::local_search, DiscreteSolver::anneal,
                            DiscreteSolver::multi_start}) {
            const auto esn = make_esn({8, 1, 2, 0.9, 0.5, 0.4});
            const auto task = delay_recall_task(200, 1, 2);
            DiscreteTrainingOptions options;
            options.solver = solver;
            options.ridge = 1e-3;
            const auto r = train_discrete_readout(esn, task.u, task.y, 20, LevelSet({-1, 0, 1}), options);
            CHECK(r.gap >= -1e-9);
            CHECK(std::isfinite(r.discrete.nmse));
        }
    }
}
