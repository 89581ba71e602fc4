#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "nqp/instance.hpp"
#include "nqp/solvers.hpp"

namespace nqp::reservoir {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Fixed random weights of an echo state network.
struct EsnParams {
    std::size_t n = 0;        ///< reservoir size
    std::size_t k_in = 0;     ///< input dimension
    MatrixXd w;               ///< n x n recurrent weights
    MatrixXd w_in;            ///< n x k_in input weights
    double spectral_radius = 0.9;
    double input_scale = 0.5;
    std::uint64_t seed = 0;   ///< seed actually used (after any regeneration)
    unsigned regenerations = 0;
};

struct EsnConfig {
    std::size_t n = 30;
    std::size_t k_in = 1;
    std::uint64_t seed = 0;
    double spectral_radius = 0.9;
    double input_scale = 0.5;
    double density = 0.1;
};

/// Harvested states; column i is x(washout + i + 1).
struct StateMatrix {
    MatrixXd x;   ///< n x L
    VectorXd y;   ///< length L target, may be empty until attached
    std::size_t washout = 0;
};

struct ReadoutWeights {
    VectorXd w_out;
    double nmse = 0.0;
};

/// Largest |eigenvalue| of a square matrix.
double spectral_radius(const MatrixXd& w);

/// W has entries nonzero with probability `density`, uniform in [-1, 1], and is
/// rescaled to the requested spectral radius. If the draw has zero spectral
/// radius it is redrawn with seed + 1, seed + 2, ... (counted in `regenerations`).
EsnParams make_esn(const EsnConfig& config);

/// Iterates x(i+1) = tanh(W x(i) + W_in u(i+1)) from x(0) = x0 (zero if absent)
/// over the columns of u (k_in x L_total), discarding the first `washout` states.
StateMatrix drive_reservoir(const EsnParams& esn, const MatrixXd& u, std::size_t washout,
                            const std::optional<VectorXd>& x0 = std::nullopt);

/// Q = X X^T, c = -2 X y, over the given level set. Q is exactly symmetric.
RealInstance build_regression_qp(const StateMatrix& states, const LevelSet& levels);

/// ||w^T X - y||^2.
double regression_loss(const StateMatrix& states, const VectorXd& w);

/// Solves (X X^T + ridge I) w = X y. Throws SingularSystem when ridge == 0 and
/// X X^T is numerically singular.
ReadoutWeights solve_continuous_ridge(const StateMatrix& states, double ridge);

/// Minimum of the regression objective over all real w (min-norm least squares,
/// valid even when X X^T is singular), expressed on the QP scale
/// ||w^T X - y||^2 - ||y||^2.
double continuous_qp_minimum(const StateMatrix& states);

/// MSE divided by the population variance of `target`.
double nmse(const VectorXd& pred, const VectorXd& target);

enum class DiscreteSolver { brute_force, local_search, anneal, multi_start };

struct DiscreteTrainingOptions {
    DiscreteSolver solver = DiscreteSolver::multi_start;
    double ridge = 1e-2;
    std::uint64_t seed = 0;
    SolverBudget budget;
    /// Readout landscapes are rugged under single-coordinate moves; many cheap starts.
    MultiStartOptions multi = [] {
        MultiStartOptions m;
        m.starts = 256;
        return m;
    }();
    AnnealSchedule schedule;
    /// Also run local search from the continuous solution rounded onto S and
    /// keep it if it beats the selected solver (ignored for brute force).
    bool polish_rounded = true;
};

struct DiscreteReadout {
    ReadoutWeights continuous;   ///< ridge readout on unscaled states
    ReadoutWeights discrete;     ///< w_out over S, applied to scaled states
    double state_scale = 1.0;    ///< states are multiplied by this before the discrete readout
    double discrete_objective = 0.0;
    double continuous_objective = 0.0;  ///< real minimum of the same (scaled) QP
    double gap = 0.0;            ///< discrete_objective - continuous_objective
    std::uint64_t evaluations = 0;
};

/// Nearest level of S for each component (ties go to the lower level).
std::vector<Int> round_to_levels(const VectorXd& w, const LevelSet& levels);

/// Continuous ridge fit, then the discrete fit over S^N of the rescaled QP.
/// The states are multiplied by max|w_ridge| / max|S| so that the continuous
/// weights span the same range as the level set.
DiscreteReadout train_discrete_readout(const StateMatrix& states, const LevelSet& levels,
                                       const DiscreteTrainingOptions& options);

/// Drives the reservoir with `u`, attaches the target (after washout) and trains.
DiscreteReadout train_discrete_readout(const EsnParams& esn, const MatrixXd& u, const VectorXd& y,
                                       std::size_t washout, const LevelSet& levels,
                                       const DiscreteTrainingOptions& options);

/// Input and target of a demo task.
struct Task {
    MatrixXd u;  ///< 1 x L
    VectorXd y;  ///< length L
};

/// y(i) = u(i - delay), u uniform in [-0.5, 0.5]; y is 0 for i < delay.
Task delay_recall_task(std::size_t length, std::size_t delay, std::uint64_t seed);

/// u(i) = sin(i / 4), y(i) = sin(i / 4)^3 / 2 plus Gaussian noise of std 0.01 on y.
Task noisy_sine_task(std::size_t length, std::uint64_t seed);

}  // namespace nqp::reservoir
