#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "pwgreeks/grid.hpp"

namespace pwg {

enum class SmoothingKind { None, First, Second };

/// First-order smoothing replaces barrier indicators by sine ramps of
/// half-width |b| centred at barrier + b; second-order additionally caps the
/// put kink with a quadratic of half-width k.
struct Smoothing {
    SmoothingKind kind = SmoothingKind::None;
    double b = -0.01;
    double k = 0.01;
};

/// Worst-of autocallable: pays ko_coupons[i] at the first ko_time where the
/// basket performance clears ko_barriers[i]; otherwise delivers a European
/// down-and-in put (strike ki_strike, barrier ki_barrier) at maturity.
struct AutocallSpec {
    std::vector<double> ko_times;
    std::vector<double> ko_coupons;
    std::vector<double> ko_barriers;
    double ki_barrier = 0.0;
    double ki_strike = 0.0;
    Smoothing smoothing;
    Eigen::VectorXd ref_spot;  // contract fixings the performance is measured against
};

/// Worst-of performance min_j S^(j) / ref^(j) of one grid row.
double performance(const Eigen::RowVectorXd& state, const Eigen::VectorXd& ref_spot);

/// Zero-rate-discounted payoff of one simulated path. `path` is the
/// (N+1) x n matrix of states with row i = S_{t_i}.
class Payoff {
public:
    virtual ~Payoff() = default;
    virtual double value(const Eigen::MatrixXd& path) const = 0;
    /// Grid rows the payoff actually reads (its event times).
    virtual std::vector<std::size_t> event_rows() const = 0;
};

class AutocallPayoff final : public Payoff {
public:
    /// Binds the schedule to a grid. Throws ConfigError when a knock-out time
    /// is off the grid, when the schedule arrays disagree, or when t_1 is not
    /// strictly before the first knock-out time.
    AutocallPayoff(AutocallSpec spec, const SimulationGrid& grid);

    double value(const Eigen::MatrixXd& path) const override;
    std::vector<std::size_t> event_rows() const override;

    const AutocallSpec& spec() const { return spec_; }

private:
    AutocallSpec spec_;
    std::vector<std::size_t> ko_rows_;
    std::size_t maturity_row_ = 0;
};

/// (S_T^(1) - K)^+ on the first asset; closed-form oracle support.
class EuropeanCallPayoff final : public Payoff {
public:
    EuropeanCallPayoff(double strike, const SimulationGrid& grid);
    double value(const Eigen::MatrixXd& path) const override;
    std::vector<std::size_t> event_rows() const override { return {maturity_row_}; }

private:
    double strike_;
    std::size_t maturity_row_;
};

/// F identically equal to a constant.
class ConstantPayoff final : public Payoff {
public:
    explicit ConstantPayoff(double value = 1.0) : value_(value) {}
    double value(const Eigen::MatrixXd&) const override { return value_; }
    std::vector<std::size_t> event_rows() const override { return {}; }

private:
    double value_;
};

/// F = S_T^(1); linear payoff with unit delta and zero gamma.
class TerminalAssetPayoff final : public Payoff {
public:
    explicit TerminalAssetPayoff(const SimulationGrid& grid)
        : maturity_row_(grid.num_steps()) {}
    double value(const Eigen::MatrixXd& path) const override {
        return path(static_cast<Eigen::Index>(maturity_row_), 0);
    }
    std::vector<std::size_t> event_rows() const override { return {maturity_row_}; }

private:
    std::size_t maturity_row_;
};

/// 1/2 + 1/2 sin(pi/2 (r - barrier - b)/|b|), clamped to {0, 1} outside the band.
double smooth_indicator_up(double r, double barrier, double b);
/// Complementary down ramp, 1 - smooth_indicator_up.
double smooth_indicator_down(double r, double barrier, double b);
/// Quadratic cap of the put kink: (strike + k - r)^2 / (4k) inside |r - strike| < k,
/// intrinsic (strike - r)^+ outside.
double smooth_put(double r, double strike, double k);

} // namespace pwg
