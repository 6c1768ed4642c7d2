#pragma once

#include <string>
#include <vector>

namespace hexctl {

// One row of the run log, written to CSV as
// t,z_ref,z,e,u,rule_count,s_h,alpha1,phi,theta (17 significant digits).
struct LogRow {
    double t = 0.0;
    double z_ref = 0.0;
    double z = 0.0;      // measured altitude [m]
    double e = 0.0;      // z_ref - z [m]
    double u = 0.0;      // collective command [rad]
    int rule_count = 0;  // 0 for the PID baseline
    double s = 0.0;      // sliding value (0 for PID)
    double alpha1 = 0.0;
    double roll = 0.0;
    double pitch = 0.0;
};

struct SimLog {
    std::vector<LogRow> rows;
    bool aborted = false;
    std::string abort_reason;
};

// Adaptation telemetry sampled every 100 steps.
struct AdaptationSample {
    double t = 0.0;
    double s = 0.0;
    double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
    int rule_count = 0;
    double gain_min_eigenvalue = 0.0;
};

}  // namespace hexctl
