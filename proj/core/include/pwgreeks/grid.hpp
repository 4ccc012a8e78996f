#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace pwg {

/// Simulation time grid t_0 = 0 < t_1 < ... < t_N (year fractions).
///
/// Built from the payoff's event times: gaps are refined with uniform
/// sub-steps no larger than `step`, then an optional extra small first point
/// is inserted. The refinement happens before the insertion, so sweeping the
/// inserted first step never moves t_2..t_N.
class SimulationGrid {
public:
    static SimulationGrid build(const std::vector<double>& event_times, double step,
                                std::optional<double> insert_first = std::nullopt);

    /// New grid with `t1` inserted as the first positive point. `t1` must be
    /// strictly below the current t_1.
    SimulationGrid with_inserted_first(double t1) const;

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& dt() const { return dt_; }

    std::size_t num_steps() const { return dt_.size(); }  // N
    double dt1() const { return dt_.front(); }
    double maturity() const { return times_.back(); }
    bool has_inserted_first() const { return inserted_first_; }

    /// Index i with times()[i] == t (tolerance 1e-10). Throws InvalidInput if absent.
    std::size_t index_of(double t) const;
    bool contains(double t) const;

private:
    SimulationGrid(std::vector<double> times, bool inserted_first);

    std::vector<double> times_;  // size N+1, times_[0] == 0
    std::vector<double> dt_;     // size N
    bool inserted_first_ = false;
};

} // namespace pwg
