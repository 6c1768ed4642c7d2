#include "hexctl/trajectory.hpp"

#include <cmath>

#include "hexctl/rotor.hpp"

namespace hexctl {

TrajectoryKind trajectory_kind_from_string(const std::string& name) {
    if (name == "constant") return TrajectoryKind::Constant;
    if (name == "step") return TrajectoryKind::Step;
    if (name == "sine") return TrajectoryKind::Sine;
    if (name == "triangle") return TrajectoryKind::Triangle;
    if (name == "sawtooth") return TrajectoryKind::Sawtooth;
    throw ConfigError("unknown trajectory kind: " + name);
}

const char* to_string(TrajectoryKind k) {
    switch (k) {
        case TrajectoryKind::Constant: return "constant";
        case TrajectoryKind::Step: return "step";
        case TrajectoryKind::Sine: return "sine";
        case TrajectoryKind::Triangle: return "triangle";
        case TrajectoryKind::Sawtooth: return "sawtooth";
    }
    return "?";
}

bool is_periodic(TrajectoryKind k) {
    return k == TrajectoryKind::Sine || k == TrajectoryKind::Triangle ||
           k == TrajectoryKind::Sawtooth;
}

void Trajectory::validate() const {
    if (!(amplitude > 0.0)) throw ConfigError("trajectory: amplitude must be > 0");
    if (is_periodic(kind) && !(frequency > 0.0))
        throw ConfigError("trajectory: frequency must be > 0 for periodic kinds");
    if (kind == TrajectoryKind::Step && !(step_time >= 0.0))
        throw ConfigError("trajectory: step_time must be >= 0");
}

double reference(const Trajectory& traj, double t) {
    switch (traj.kind) {
        case TrajectoryKind::Constant:
            return traj.amplitude;
        case TrajectoryKind::Step:
            return 0.5 * traj.amplitude * ((t >= 0.0 ? 1.0 : 0.0) +
                                           (t >= traj.step_time ? 1.0 : 0.0));
        case TrajectoryKind::Sine:
            return traj.amplitude * std::sin(2.0 * kPi * traj.frequency * t);
        case TrajectoryKind::Triangle: {
            const double phase = traj.frequency * t - std::floor(traj.frequency * t);
            if (phase < 0.25) return traj.amplitude * 4.0 * phase;
            if (phase < 0.75) return traj.amplitude * (2.0 - 4.0 * phase);
            return traj.amplitude * (4.0 * phase - 4.0);
        }
        case TrajectoryKind::Sawtooth: {
            const double phase = traj.frequency * t - std::floor(traj.frequency * t);
            return traj.amplitude * phase;
        }
    }
    throw ConfigError("reference: unknown trajectory kind");
}

}  // namespace hexctl
