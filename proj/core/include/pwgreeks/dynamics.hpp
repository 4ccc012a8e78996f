#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pwgreeks/correlation.hpp"
#include "pwgreeks/grid.hpp"
#include "pwgreeks/local_vol.hpp"
#include "pwgreeks/rng.hpp"

namespace pwg {

/// Model inputs for the simulation engine: initial spots, one local-vol
/// surface per asset, the factored correlation, and the time grid.
struct ModelSpec {
    Eigen::VectorXd spot;
    std::vector<LocalVolSurface> surfaces;
    CorrelationModel corr;
    SimulationGrid grid;

    Eigen::Index n() const { return spot.size(); }
    void validate() const;
};

/// The three coupled trajectories. Row i holds S_{t_i} (row 0 is the spot);
/// s_hat reruns the first step with -Z_1, s_bar with 0, and all three share
/// Z_2..Z_N exactly.
struct PathTriple {
    Eigen::MatrixXd s;      // (N+1) x n
    Eigen::MatrixXd s_hat;  // (N+1) x n
    Eigen::MatrixXd s_bar;  // (N+1) x n
    Eigen::VectorXd z1;     // first-step normal vector
};

/// Overrides for the first simulation step [t_0, t_1): per-asset volatility
/// frozen at the spot (plus eps1) and the inflated correlation's mixing
/// matrix. Later steps always use the base dynamics.
struct FirstStepDynamics {
    Eigen::VectorXd sigma;   // frozen vols, constant in s over the step
    CorrelationModel corr;   // factored Sigma_eps2
};

FirstStepDynamics inflated_first_step_dynamics(const ModelSpec& spec, const InflationParams& eps);

/// One exponential Euler step: s_next_j = s_j exp(-sigma_j^2 dt/2 + sigma_j sqrt(dt) w_j)
/// with w = rho z and sigma_j = surface_j(t_i, s_j).
Eigen::VectorXd step(const ModelSpec& spec, std::size_t i, const Eigen::VectorXd& s_prev,
                     const Eigen::VectorXd& z);

/// As `step`, but with premixed noise w = rho z and no validation; writes into
/// `next`. Hot-loop building block for multi-scenario simulation.
void advance_step(const ModelSpec& spec, std::size_t i, const Eigen::VectorXd& w,
                  const Eigen::VectorXd& prev, Eigen::VectorXd& next);

/// State at t_1 under the covariance-inflated first step.
Eigen::VectorXd inflated_first_step(const ModelSpec& spec, const InflationParams& eps,
                                    const Eigen::VectorXd& s, const Eigen::VectorXd& z);

/// Simulate (S, S_hat, S_bar) for one path. When `first_step` is given, the
/// first step of all three trajectories uses the inflated dynamics. With
/// include_bar = false the zeroed trajectory is skipped and s_bar is empty
/// (Delta needs only S and S_hat).
PathTriple simulate_triple(const ModelSpec& spec, const NoiseBlock& noise, std::size_t path,
                           const FirstStepDynamics* first_step = nullptr,
                           bool include_bar = true);

/// Simulate S only (no reflected/zeroed companions).
Eigen::MatrixXd simulate_path(const ModelSpec& spec, const NoiseBlock& noise, std::size_t path,
                              const FirstStepDynamics* first_step = nullptr);

} // namespace pwg
