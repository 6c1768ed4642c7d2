#pragma once

#include <string>

#include "hexctl/errors.hpp"

namespace hexctl {

enum class TrajectoryKind { Constant, Step, Sine, Triangle, Sawtooth };

TrajectoryKind trajectory_kind_from_string(const std::string& name);  // throws ConfigError
const char* to_string(TrajectoryKind k);
bool is_periodic(TrajectoryKind k);

// Reference altitude profiles.
//   constant:  amplitude
//   step:      amplitude/2 at t = 0 plus amplitude/2 at t = step_time
//   sine:      amplitude * sin(2 pi f t)
//   triangle:  0 -> +A -> -A -> 0 over one period, starting upward
//   sawtooth:  ramp 0 -> A over one period, then reset
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::Constant;
    double amplitude = 1.0;  // [m]
    double frequency = 0.1;  // [Hz], periodic kinds
    double step_time = 5.0;  // [s], second riser of the step reference

    void validate() const;  // throws ConfigError
};

double reference(const Trajectory& traj, double t);

}  // namespace hexctl
