#include "nqp/reservoir.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "nqp/errors.hpp"

namespace nqp::reservoir {

double spectral_radius(const MatrixXd& w)
{
    if (w.rows() != w.cols()) throw DimensionMismatch("spectral_radius: matrix is not square");
    Eigen::EigenSolver<MatrixXd> solver(w, false);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

EsnParams make_esn(const EsnConfig& config)
{
    if (config.n == 0 || config.k_in == 0) throw InvalidInstance("make_esn: sizes must be positive");
    if (!(config.spectral_radius > 0.0)) throw InvalidInstance("make_esn: spectral radius must be positive");
    if (!(config.density > 0.0 && config.density <= 1.0)) throw InvalidInstance("make_esn: density must be in (0,1]");

    constexpr unsigned max_attempts = 1000;
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        const std::uint64_t seed = config.seed + attempt;
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution present(config.density);
        std::uniform_real_distribution<double> weight(-1.0, 1.0);

        MatrixXd w = MatrixXd::Zero(config.n, config.n);
        for (Eigen::Index i = 0; i < w.rows(); ++i)
            for (Eigen::Index j = 0; j < w.cols(); ++j)
                if (present(rng)) w(i, j) = weight(rng);

        const double rho = spectral_radius(w);
        // Nilpotent draws have eigenvalues at rounding level; rescaling them would blow up.
        if (!(rho > 1e-8 * std::max(w.norm(), 1e-300))) continue;
        w *= config.spectral_radius / rho;

        std::uniform_real_distribution<double> input(-config.input_scale, config.input_scale);
        MatrixXd w_in(config.n, config.k_in);
        for (Eigen::Index i = 0; i < w_in.rows(); ++i)
            for (Eigen::Index j = 0; j < w_in.cols(); ++j) w_in(i, j) = input(rng);

        EsnParams esn;
        esn.n = config.n;
        esn.k_in = config.k_in;
        esn.w = std::move(w);
        esn.w_in = std::move(w_in);
        esn.spectral_radius = config.spectral_radius;
        esn.input_scale = config.input_scale;
        esn.seed = seed;
        esn.regenerations = attempt;
        return esn;
    }
    throw InvalidInstance("make_esn: every draw had zero spectral radius; increase density");
}

StateMatrix drive_reservoir(const EsnParams& esn, const MatrixXd& u, std::size_t washout,
                            const std::optional<VectorXd>& x0)
{
    if (static_cast<std::size_t>(u.rows()) != esn.k_in)
        throw DimensionMismatch("drive_reservoir: input has " + std::to_string(u.rows()) + " rows, expected " +
                                std::to_string(esn.k_in));
    const auto total = static_cast<std::size_t>(u.cols());
    if (washout >= total) throw InvalidInstance("drive_reservoir: washout must be shorter than the input");

    VectorXd x = x0 ? *x0 : VectorXd::Zero(esn.n);
    if (static_cast<std::size_t>(x.size()) != esn.n) throw DimensionMismatch("drive_reservoir: bad initial state");

    StateMatrix states;
    states.washout = washout;
    states.x.resize(esn.n, total - washout);
    for (std::size_t i = 0; i < total; ++i) {
        x = (esn.w * x + esn.w_in * u.col(i)).array().tanh().matrix();
        if (i >= washout) states.x.col(i - washout) = x;
    }
    return states;
}

RealInstance build_regression_qp(const StateMatrix& states, const LevelSet& levels)
{
    const auto n = static_cast<std::size_t>(states.x.rows());
    if (n == 0 || states.x.cols() == 0) throw InvalidInstance("build_regression_qp: empty state matrix");
    if (states.y.size() != states.x.cols()) throw DimensionMismatch("build_regression_qp: target length mismatch");

    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = states.x.row(i).dot(states.x.row(j));
            q[i * n + j] = v;
            q[j * n + i] = v;
        }
    }
    const VectorXd xy = states.x * states.y;
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = -2.0 * xy(i);
    return make_instance(n, std::move(q), std::move(c), levels, true);
}

double regression_loss(const StateMatrix& states, const VectorXd& w)
{
    return (states.x.transpose() * w - states.y).squaredNorm();
}

double nmse(const VectorXd& pred, const VectorXd& target)
{
    if (pred.size() != target.size()) throw DimensionMismatch("nmse: length mismatch");
    if (target.size() < 2) throw InvalidInstance("nmse: need at least two samples");
    const double mean = target.mean();
    const double variance = (target.array() - mean).square().mean();
    if (!(variance > 0.0)) throw InvalidInstance("nmse: target has zero variance");
    return (pred - target).squaredNorm() / static_cast<double>(target.size()) / variance;
}

ReadoutWeights solve_continuous_ridge(const StateMatrix& states, double ridge)
{
    if (!(ridge >= 0.0)) throw InvalidInstance("solve_continuous_ridge: ridge must be >= 0");
    if (states.y.size() != states.x.cols()) throw DimensionMismatch("solve_continuous_ridge: target length mismatch");
    MatrixXd a = states.x * states.x.transpose();
    if (ridge == 0.0) {
        Eigen::SelfAdjointEigenSolver<MatrixXd> eig(a, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        if (!(ev.minCoeff() > 1e-10 * ev.maxCoeff()))
            throw SingularSystem("solve_continuous_ridge: X X^T is numerically singular; use ridge > 0");
    }
    a.diagonal().array() += ridge;
    const VectorXd b = states.x * states.y;

    Eigen::LLT<MatrixXd> llt(a);
    if (llt.info() != Eigen::Success) throw SingularSystem("solve_continuous_ridge: system is not positive definite");
    ReadoutWeights out;
    out.w_out = llt.solve(b);
    if ((a * out.w_out - b).norm() > 1e-8 * std::max(b.norm(), 1e-300) && b.norm() > 0.0)
        throw SingularSystem("solve_continuous_ridge: residual check failed");
    out.nmse = nmse(states.x.transpose() * out.w_out, states.y);
    return out;
}

double continuous_qp_minimum(const StateMatrix& states)
{
    const MatrixXd xt = states.x.transpose();
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(xt);
    const VectorXd w = cod.solve(states.y);
    return (xt * w - states.y).squaredNorm() - states.y.squaredNorm();
}

namespace {

SolveResult<double> run_solver(const RealInstance& inst, const DiscreteTrainingOptions& options)
{
    switch (options.solver) {
    case DiscreteSolver::brute_force:
        return solve_brute_force(inst, options.budget);
    case DiscreteSolver::local_search: {
        LocalSearchOptions local;
        local.budget = options.budget;
        return solve_local_search(inst, random_assignment(inst, options.seed), options.seed, local);
    }
    case DiscreteSolver::anneal:
        return solve_anneal(inst, options.schedule, options.seed);
    case DiscreteSolver::multi_start:
        break;
    }
    return solve_multi_start(inst, options.seed, options.multi);
}

}  // namespace

std::vector<Int> round_to_levels(const VectorXd& w, const LevelSet& levels)
{
    std::vector<Int> out(static_cast<std::size_t>(w.size()));
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        Int best = levels[0];
        for (Int v : levels.values())
            if (std::abs(static_cast<double>(v) - w(i)) < std::abs(static_cast<double>(best) - w(i))) best = v;
        out[static_cast<std::size_t>(i)] = best;
    }
    return out;
}

DiscreteReadout train_discrete_readout(const StateMatrix& states, const LevelSet& levels,
                                       const DiscreteTrainingOptions& options)
{
    DiscreteReadout out;
    out.continuous = solve_continuous_ridge(states, options.ridge);

    const double max_weight = out.continuous.w_out.cwiseAbs().maxCoeff();
    const auto max_level = static_cast<double>(levels.max_abs());
    out.state_scale = max_weight > 0.0 ? max_weight / max_level : 1.0;

    StateMatrix scaled{states.x * out.state_scale, states.y, states.washout};
    const RealInstance inst = build_regression_qp(scaled, levels);
    auto result = run_solver(inst, options);
    if (options.polish_rounded && options.solver != DiscreteSolver::brute_force) {
        LocalSearchOptions local;
        local.budget = options.budget;
        const auto rounded = round_to_levels(out.continuous.w_out / out.state_scale, levels);
        auto polished = solve_local_search(inst, rounded, options.seed, local);
        result.evaluations += polished.evaluations;
        if (polished.best.objective < result.best.objective) result.best = std::move(polished.best);
    }

    out.discrete.w_out = VectorXd(static_cast<Eigen::Index>(inst.n));
    for (std::size_t i = 0; i < inst.n; ++i) out.discrete.w_out(static_cast<Eigen::Index>(i)) = static_cast<double>(result.best.w[i]);
    out.discrete.nmse = nmse(scaled.x.transpose() * out.discrete.w_out, scaled.y);
    out.discrete_objective = result.best.objective;
    out.continuous_objective = continuous_qp_minimum(scaled);
    out.gap = out.discrete_objective - out.continuous_objective;
    out.evaluations = result.evaluations;
    return out;
}

DiscreteReadout train_discrete_readout(const EsnParams& esn, const MatrixXd& u, const VectorXd& y,
                                       std::size_t washout, const LevelSet& levels,
                                       const DiscreteTrainingOptions& options)
{
    if (y.size() != u.cols()) throw DimensionMismatch("train_discrete_readout: target length mismatch");
    StateMatrix states = drive_reservoir(esn, u, washout);
    states.y = y.tail(y.size() - static_cast<Eigen::Index>(washout));
    return train_discrete_readout(states, levels, options);
}

Task delay_recall_task(std::size_t length, std::size_t delay, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    Task task{MatrixXd(1, static_cast<Eigen::Index>(length)), VectorXd::Zero(static_cast<Eigen::Index>(length))};
    for (std::size_t i = 0; i < length; ++i) task.u(0, static_cast<Eigen::Index>(i)) = dist(rng);
    for (std::size_t i = delay; i < length; ++i)
        task.y(static_cast<Eigen::Index>(i)) = task.u(0, static_cast<Eigen::Index>(i - delay));
    return task;
}

Task noisy_sine_task(std::size_t length, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.01);
    Task task{MatrixXd(1, static_cast<Eigen::Index>(length)), VectorXd(static_cast<Eigen::Index>(length))};
    for (std::size_t i = 0; i < length; ++i) {
        const double s = std::sin(static_cast<double>(i) / 4.0);
        task.u(0, static_cast<Eigen::Index>(i)) = s;
        task.y(static_cast<Eigen::Index>(i)) = 0.5 * s * s * s + noise(rng);
    }
    return task;
}

}  // namespace nqp::reservoir
