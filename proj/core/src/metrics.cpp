#include "hexctl/metrics.hpp"

#include <cmath>

namespace hexctl {

Metrics compute_metrics(const SimLog& log, const Trajectory& traj) {
    if (log.rows.empty()) throw ConfigError("compute_metrics: log is empty");
    const auto& rows = log.rows;
    const bool periodic = is_periodic(traj.kind);
    const double duration = rows.back().t;

    // Target level: final commanded value for step-like references, first
    // extremum (= amplitude) for periodic ones.
    const double level = periodic ? traj.amplitude : rows.back().z_ref;
    const double band = 0.02 * std::abs(level);

    Metrics m;

    double t10 = -1.0, t90 = -1.0;
    for (const auto& r : rows) {
        if (t10 < 0.0 && r.z >= 0.1 * level) t10 = r.t;
        if (r.z >= 0.9 * level) {
            t90 = r.t;
            break;
        }
    }
    m.rise_time = (t10 >= 0.0 && t90 >= 0.0) ? t90 - t10 : duration;

    int last_violation = -1;
    for (size_t i = 0; i < rows.size(); ++i)
        if (std::abs(rows[i].z - rows[i].z_ref) > band) last_violation = static_cast<int>(i);
    if (last_violation < 0) {
        m.settling_time = 0.0;
    } else if (last_violation + 1 == static_cast<int>(rows.size())) {
        m.settling_time = duration;
        m.settled = false;
    } else {
        m.settling_time = rows[static_cast<size_t>(last_violation) + 1].t;
    }

    double sum_sq = 0.0;
    size_t count = 0;
    const double rmse_from = (periodic && m.settled) ? m.settling_time : 0.0;
    for (const auto& r : rows) {
        if (r.t < rmse_from) continue;
        sum_sq += (r.z_ref - r.z) * (r.z_ref - r.z);
        ++count;
    }
    m.rmse = count > 0 ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;

    double z_max = rows.front().z;
    for (const auto& r : rows) z_max = std::max(z_max, r.z);
    m.peak_overshoot = std::max(0.0, (z_max - level) / std::abs(level));

    return m;
}

}  // namespace hexctl
