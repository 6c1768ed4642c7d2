#pragma once

#include "hexctl/log.hpp"
#include "hexctl/trajectory.hpp"

namespace hexctl {

// Tracking-quality summary.  Rise time is the first 10% -> 90% traversal of
// the target level, settling time the first instant after which the tracking
// error stays within 2% of it.  For step-like references the level is the
// final commanded value and RMSE runs over the whole log; for periodic
// references the level is the first extremum (the amplitude) and RMSE runs
// over the post-settling window.
struct Metrics {
    double rmse = 0.0;           // [m]
    double rise_time = 0.0;      // [s]
    double settling_time = 0.0;  // [s]
    double peak_overshoot = 0.0; // fraction of the level
    bool settled = true;         // false: settling_time reports the run duration
};

Metrics compute_metrics(const SimLog& log, const Trajectory& traj);

}  // namespace hexctl
