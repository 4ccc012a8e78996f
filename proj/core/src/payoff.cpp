#include "pwgreeks/payoff.hpp"

#include "pwgreeks/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pwg {

double performance(const Eigen::RowVectorXd& state, const Eigen::VectorXd& ref_spot) {
    double worst = state[0] / ref_spot[0];
    for (Eigen::Index j = 1; j < state.size(); ++j) {
        worst = std::min(worst, state[j] / ref_spot[j]);
    }
    return worst;
}

double smooth_indicator_up(double r, double barrier, double b) {
    if (b == 0.0) {
        throw InvalidInput("smoothing: band width b must be nonzero");
    }
    const double half = std::fabs(b);
    const double d = r - barrier - b;
    if (d >= half) return 1.0;
    if (d <= -half) return 0.0;
    return 0.5 + 0.5 * std::sin(0.5 * std::numbers::pi * d / half);
}

double smooth_indicator_down(double r, double barrier, double b) {
    return 1.0 - smooth_indicator_up(r, barrier, b);
}

double smooth_put(double r, double strike, double k) {
    if (!(k > 0.0)) {
        throw InvalidInput("smoothing: put band width k must be positive");
    }
    if (std::fabs(r - strike) < k) {
        const double a = strike + k - r;
        return 0.25 * a * a / k;
    }
    return std::max(strike - r, 0.0);
}

AutocallPayoff::AutocallPayoff(AutocallSpec spec, const SimulationGrid& grid)
    : spec_(std::move(spec)) {
    const std::size_t m = spec_.ko_times.size();
    if (m == 0 || spec_.ko_coupons.size() != m || spec_.ko_barriers.size() != m) {
        throw ConfigError("autocall: ko_times/ko_coupons/ko_barriers must be equal nonempty length");
    }
    if (!std::is_sorted(spec_.ko_times.begin(), spec_.ko_times.end())) {
        throw ConfigError("autocall: ko_times must be ascending");
    }
    for (double b : spec_.ko_barriers) {
        if (!(b > 0.0)) throw ConfigError("autocall: ko_barriers must be positive");
    }
    if (!(spec_.ki_barrier > 0.0) || !(spec_.ki_strike > 0.0)) {
        throw ConfigError("autocall: ki_barrier and ki_strike must be positive");
    }
    if (spec_.ref_spot.size() == 0 || (spec_.ref_spot.array() <= 0.0).any()) {
        throw ConfigError("autocall: ref_spot must be positive per asset");
    }
    if (spec_.smoothing.kind != SmoothingKind::None && spec_.smoothing.b == 0.0) {
        throw ConfigError("autocall: smoothing band b must be nonzero");
    }
    if (spec_.smoothing.kind == SmoothingKind::Second && !(spec_.smoothing.k > 0.0)) {
        throw ConfigError("autocall: smoothing band k must be positive");
    }

    // t_1 may not be an event time: it must come strictly before the first
    // knock-out observation.
    if (grid.times()[1] >= spec_.ko_times.front() - 1e-10) {
        throw ConfigError("autocall: t_1 must lie strictly before the first knock-out time; "
                          "insert an extra small first step");
    }
    ko_rows_.reserve(m);
    for (double t : spec_.ko_times) {
        if (!grid.contains(t)) {
            throw ConfigError("autocall: knock-out time not on the simulation grid");
        }
        ko_rows_.push_back(grid.index_of(t));
    }
    maturity_row_ = grid.num_steps();
}

std::vector<std::size_t> AutocallPayoff::event_rows() const {
    std::vector<std::size_t> rows = ko_rows_;
    if (std::find(rows.begin(), rows.end(), maturity_row_) == rows.end()) {
        rows.push_back(maturity_row_);
    }
    return rows;
}

double AutocallPayoff::value(const Eigen::MatrixXd& path) const {
    const auto perf_at = [&](std::size_t row) {
        return performance(path.row(static_cast<Eigen::Index>(row)), spec_.ref_spot);
    };

    if (spec_.smoothing.kind == SmoothingKind::None) {
        for (std::size_t i = 0; i < ko_rows_.size(); ++i) {
            if (perf_at(ko_rows_[i]) >= spec_.ko_barriers[i]) {
                return spec_.ko_coupons[i];
            }
        }
        const double rt = perf_at(maturity_row_);
        if (rt <= spec_.ki_barrier) {
            return std::max(spec_.ki_strike - rt, 0.0);
        }
        return 0.0;
    }

    const double b = spec_.smoothing.b;
    double alive = 1.0;
    double v = 0.0;
    for (std::size_t i = 0; i < ko_rows_.size(); ++i) {
        const double q = smooth_indicator_up(perf_at(ko_rows_[i]), spec_.ko_barriers[i], b);
        v += alive * q * spec_.ko_coupons[i];
        alive *= 1.0 - q;
    }
    const double rt = perf_at(maturity_row_);
    const double q_ki = smooth_indicator_down(rt, spec_.ki_barrier, b);
    const double intrinsic = (spec_.smoothing.kind == SmoothingKind::Second)
                                 ? smooth_put(rt, spec_.ki_strike, spec_.smoothing.k)
                                 : std::max(spec_.ki_strike - rt, 0.0);
    return v + alive * q_ki * intrinsic;
}

EuropeanCallPayoff::EuropeanCallPayoff(double strike, const SimulationGrid& grid)
    : strike_(strike), maturity_row_(grid.num_steps()) {
    if (!(strike > 0.0)) {
        throw InvalidInput("european_call: strike must be positive");
    }
}

double EuropeanCallPayoff::value(const Eigen::MatrixXd& path) const {
    return std::max(path(static_cast<Eigen::Index>(maturity_row_), 0) - strike_, 0.0);
}

} // namespace pwg
