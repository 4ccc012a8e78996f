#include "pwgreeks/grid.hpp"

#include "pwgreeks/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pwg {

namespace {
constexpr double kTimeTol = 1e-10;
}

SimulationGrid::SimulationGrid(std::vector<double> times, bool inserted_first)
    : times_(std::move(times)), inserted_first_(inserted_first) {
    dt_.resize(times_.size() - 1);
    for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
        dt_[i] = times_[i + 1] - times_[i];
    }
}

SimulationGrid SimulationGrid::build(const std::vector<double>& event_times, double step,
                                     std::optional<double> insert_first) {
    if (event_times.empty()) {
        throw InvalidInput("grid: event_times must be nonempty");
    }
    if (step <= 0.0) {
        throw InvalidInput("grid: step must be positive");
    }
    for (double t : event_times) {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw InvalidInput("grid: event times must be positive and finite");
        }
    }

    std::vector<double> events(event_times);
    std::sort(events.begin(), events.end());
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        if (events[i + 1] - events[i] < kTimeTol) {
            throw InvalidInput("grid: duplicate event times");
        }
    }

    // Refine {0} U events with uniform sub-steps of at most `step`.
    // Event times are never moved.
    std::vector<double> times{0.0};
    double prev = 0.0;
    for (double ev : events) {
        const double gap = ev - prev;
        const auto pieces = static_cast<std::size_t>(std::ceil(gap / step - kTimeTol));
        for (std::size_t j = 1; j < pieces; ++j) {
            times.push_back(prev + gap * static_cast<double>(j) / static_cast<double>(pieces));
        }
        times.push_back(ev);
        prev = ev;
    }

    SimulationGrid grid(std::move(times), false);
    if (insert_first) {
        return grid.with_inserted_first(*insert_first);
    }
    return grid;
}

SimulationGrid SimulationGrid::with_inserted_first(double t1) const {
    if (!(t1 > 0.0) || !std::isfinite(t1)) {
        throw InvalidInput("grid: inserted first step must be positive");
    }
    if (t1 >= times_[1] - kTimeTol) {
        throw InvalidInput("grid: inserted first step must lie strictly before t_1");
    }
    std::vector<double> times;
    times.reserve(times_.size() + 1);
    times.push_back(0.0);
    times.push_back(t1);
    times.insert(times.end(), times_.begin() + 1, times_.end());
    return SimulationGrid(std::move(times), true);
}

std::size_t SimulationGrid::index_of(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t - kTimeTol);
    if (it == times_.end() || std::fabs(*it - t) > kTimeTol) {
        throw InvalidInput("grid: time not on grid");
    }
    return static_cast<std::size_t>(it - times_.begin());
}

bool SimulationGrid::contains(double t) const {
    auto it = std::lower_bound(times_.begin(), times_.end(), t - kTimeTol);
    return it != times_.end() && std::fabs(*it - t) <= kTimeTol;
}

} // namespace pwg
