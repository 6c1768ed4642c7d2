#include "hexctl/sim.hpp"

#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <random>
#include <sstream>

namespace hexctl {

RunResult run_sim(const RunConfig& cfg) {
    cfg.validate();
    const double dt = cfg.dt();
    const long steps = std::lround(cfg.duration / dt);

    const bool use_g = cfg.controller == "g";
    std::optional<GController> gctrl;
    std::optional<Pid> pid;
    if (use_g) {
        gctrl.emplace(cfg.gctrl);
    } else {
        pid.emplace(cfg.pid);
    }

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    RigidBodyState state;
    RunResult res;
    res.log.rows.reserve(static_cast<size_t>(steps));

    for (long k = 0; k < steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const PlantOutputs out = plant_outputs(state);
        double z_meas = out.altitude;
        if (cfg.plant.sensor_noise_std > 0.0)
            z_meas += cfg.plant.sensor_noise_std * gauss(rng);

        LogRow row;
        row.t = t;
        row.z_ref = reference(cfg.trajectory, t);
        row.z = z_meas;
        row.e = row.z_ref - z_meas;
        row.roll = out.roll;
        row.pitch = out.pitch;

        try {
            if (use_g) {
                const GTick tick = gctrl->step(row.e, dt);
                row.u = tick.u;
                row.rule_count = tick.rule_count;
                row.s = tick.s;
                row.alpha1 = tick.alpha1;
            } else {
                row.u = pid->step(row.e, dt);
            }
        } catch (const NumericError& err) {
            std::ostringstream reason;
            reason << err.what() << " (tick " << k << ", t=" << t << " s)";
            res.log.aborted = true;
            res.log.abort_reason = reason.str();
            break;
        }
        res.log.rows.push_back(row);

        if (k % 100 == 0) {
            AdaptationSample sample;
            sample.t = t;
            sample.s = row.s;
            sample.alpha1 = row.alpha1;
            sample.rule_count = row.rule_count;
            if (use_g) {
                sample.alpha2 = gctrl->sliding().alpha2;
                sample.alpha3 = gctrl->sliding().alpha3;
                sample.gain_min_eigenvalue = gctrl->min_gain_eigenvalue();
            }
            res.telemetry.push_back(sample);
        }

        const AttitudeCommand att =
            attitude_hold(out.roll, out.pitch, out.yaw, state.rates, 0.0, cfg.attitude);
        const MixedCommand cmd = mix(row.u, att.roll_cmd, att.pitch_cmd, att.yaw_cmd, cfg.plant);
        try {
            state = plant_step(state, cmd, cfg.plant).state;
        } catch (const NumericError& err) {
            std::ostringstream reason;
            reason << err.what() << " (tick " << k << ", t=" << t << " s)";
            res.log.aborted = true;
            res.log.abort_reason = reason.str();
            break;
        }
    }

    if (use_g) {
        res.events = gctrl->events();
        res.final_rules = gctrl->rules();
    }
    if (!res.log.aborted && !res.log.rows.empty())
        res.metrics = compute_metrics(res.log, cfg.trajectory);
    return res;
}

std::vector<ComparisonRow> compare(const std::vector<RunConfig>& cfgs) {
    if (cfgs.empty()) throw ConfigError("compare: no configurations given");
    const Trajectory& t0 = cfgs.front().trajectory;
    for (const auto& c : cfgs) {
        const Trajectory& t = c.trajectory;
        const bool same = t.kind == t0.kind && t.amplitude == t0.amplitude &&
                          t.frequency == t0.frequency && t.step_time == t0.step_time;
        if (!same) throw ConfigError("compare: configurations must share the trajectory");
        if (c.dt() != cfgs.front().dt() || c.duration != cfgs.front().duration ||
            c.plant.inertia.mass != cfgs.front().plant.inertia.mass)
            throw ConfigError("compare: configurations must share the plant and timing");
    }

    std::vector<std::future<RunResult>> futures;
    futures.reserve(cfgs.size());
    for (const auto& c : cfgs)
        futures.push_back(std::async(std::launch::async, [cfg = c] { return run_sim(cfg); }));

    std::vector<ComparisonRow> rows;
    rows.reserve(cfgs.size());
    for (size_t i = 0; i < cfgs.size(); ++i) {
        RunResult res = futures[i].get();
        if (res.log.aborted)
            throw NumericError("compare: run '" + cfgs[i].controller +
                               "' aborted: " + res.log.abort_reason);
        rows.push_back(ComparisonRow{cfgs[i].controller, cfgs[i].trajectory, res.metrics});
    }
    return rows;
}

std::string format_comparison_table(const std::vector<ComparisonRow>& rows) {
    std::ostringstream os;
    char line[160];
    std::snprintf(line, sizeof line, "%-10s %-11s %10s %10s %12s %10s %8s\n", "trajectory",
                  "controller", "rmse_m", "rise_s", "settling_s", "overshoot", "settled");
    os << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-10s %-11s %10.4f %10.4f %12.4f %10.4f %8s\n",
                      to_string(r.trajectory.kind), r.controller.c_str(), r.metrics.rmse,
                      r.metrics.rise_time, r.metrics.settling_time, r.metrics.peak_overshoot,
                      r.metrics.settled ? "yes" : "no");
        os << line;
    }
    return os.str();
}

void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
    os << "trajectory,controller,rmse,rise_time,settling_time,peak_overshoot,settled\n";
    for (const auto& r : rows)
        os << to_string(r.trajectory.kind) << ',' << r.controller << ','
           << format_double(r.metrics.rmse) << ',' << format_double(r.metrics.rise_time) << ','
           << format_double(r.metrics.settling_time) << ','
           << format_double(r.metrics.peak_overshoot) << ',' << (r.metrics.settled ? 1 : 0)
           << "\n";
}

}  // namespace hexctl
