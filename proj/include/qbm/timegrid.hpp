#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qbm {

struct TimeGrid {
    double t_start = 0.0;
    double t_step = 0.15707963267948966;  // tau_Omega / 40 at Omega = 1
    std::size_t n_steps = 2000;

    double at(std::size_t i) const noexcept { return t_start + static_cast<double>(i) * t_step; }
    // Number of sample points, i.e. n_steps + 1 (both ends included).
    std::size_t size() const noexcept { return n_steps + 1; }
    std::vector<double> times() const;

    bool operator==(const TimeGrid&) const = default;
};

// Throws InvalidValue unless t_step > 0, t_start >= 0, n_steps >= 1.
void validate(const TimeGrid& grid);

// Grid covering [begin, end] with the given step (end included when on grid).
TimeGrid span_grid(double begin, double end, double step);

struct TimeSample {
    double t = 0.0;
    double value = 0.0;
    bool flagged = false;
};

struct TimeSeries {
    std::string name;
    std::vector<TimeSample> samples;
};

}  // namespace qbm
