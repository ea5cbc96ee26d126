#include "qbm/timegrid.hpp"

#include <cmath>

#include "qbm/error.hpp"

namespace qbm {

std::vector<double> TimeGrid::times() const {
    std::vector<double> ts(size());
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = at(i);
    return ts;
}

void validate(const TimeGrid& grid) {
    if (!(grid.t_step > 0.0) || !std::isfinite(grid.t_step))
        throw Error(ErrorCode::InvalidValue, "t_step must be > 0");
    if (!(grid.t_start >= 0.0) || !std::isfinite(grid.t_start))
        throw Error(ErrorCode::InvalidValue, "t_start must be >= 0");
    if (grid.n_steps < 1) throw Error(ErrorCode::InvalidValue, "n_steps must be >= 1");
}

TimeGrid span_grid(double begin, double end, double step) {
    TimeGrid g;
    g.t_start = begin;
    g.t_step = step;
    g.n_steps = static_cast<std::size_t>(std::floor((end - begin) / step + 1e-9));
    validate(g);
    return g;
}

}  // namespace qbm
