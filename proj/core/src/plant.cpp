#include "hexctl/plant.hpp"

#include <algorithm>
#include <cmath>

namespace hexctl {

std::array<RotorStation, 6> PlantConfig::stations() const {
    std::array<RotorStation, 6> out;
    for (int i = 0; i < 6; ++i) {
        const double angle = kPi / 3.0 * i;
        out[i].arm = arm_length * Eigen::Vector3d(std::cos(angle), std::sin(angle), 0.0);
        out[i].spin = (i % 2 == 0) ? SpinDirection::CW : SpinDirection::CCW;
    }
    return out;
}

void PlantConfig::validate() const {
    inertia.validate();
    rotor.validate();
    if (!(rotor_speed > 0.0)) throw ConfigError("plant: rotor_speed must be > 0");
    if (!(arm_length > 0.0)) throw ConfigError("plant: arm_length must be > 0");
    if (!(dt > 0.0)) throw ConfigError("plant: dt must be > 0");
    if (!(pitch_max > pitch_min)) throw ConfigError("plant: pitch_max must exceed pitch_min");
    if (sensor_noise_std < 0.0) throw ConfigError("plant: sensor_noise_std must be >= 0");
}

MixedCommand mix(double thrust_cmd, double roll_cmd, double pitch_cmd, double yaw_cmd,
                 const PlantConfig& cfg) {
    MixedCommand out;
    const auto stations = cfg.stations();
    for (int i = 0; i < 6; ++i) {
        const double kx = stations[i].arm.x() / cfg.arm_length;
        const double ky = -stations[i].arm.y() / cfg.arm_length;
        const double raw =
            thrust_cmd + roll_cmd * ky + pitch_cmd * kx + yaw_cmd * spin_sign(stations[i].spin);
        const double sat = std::clamp(raw, cfg.pitch_min, cfg.pitch_max);
        out.collective[i] = sat;
        if (sat != raw) out.saturated = true;
    }
    return out;
}

PlantOutputs plant_outputs(const RigidBodyState& state) {
    PlantOutputs out;
    const EulerAngles e = quaternion_to_euler(state.attitude);
    out.altitude = -state.position.z();
    out.climb_rate = -(rotation_matrix(state.attitude) * state.velocity).z();
    out.roll = e.roll;
    out.pitch = e.pitch;
    out.yaw = e.yaw;
    return out;
}

PlantStepResult plant_step(const RigidBodyState& state, const MixedCommand& cmd,
                           const PlantConfig& cfg) {
    const auto stations = cfg.stations();
    const Eigen::Matrix3d b = rotation_matrix(state.attitude);

    WrenchInput wrench;
    for (int i = 0; i < 6; ++i) {
        // Airflow seen by the hub: body velocity plus the rate-induced
        // velocity at the rotor station.
        const Eigen::Vector3d v_station = state.velocity + state.rates.cross(stations[i].arm);
        RotorInflow inflow;
        inflow.normal = -v_station.z();
        inflow.tangential = std::hypot(v_station.x(), v_station.y());
        inflow.climb = inflow.normal;
        inflow.omega = cfg.rotor_speed;
        inflow.collective = cmd.collective[i];

        RotorParams params = cfg.rotor;
        params.spin = stations[i].spin;
        const RotorOutput rotor = rotor_forces(inflow, params);

        const Eigen::Vector3d thrust(0.0, 0.0, -rotor.thrust);
        wrench.force += thrust;
        wrench.moment += stations[i].arm.cross(thrust);
        wrench.moment.z() += rotor.yaw_torque;
    }
    // Gravity rotated into body axes (third row of B).
    wrench.force += cfg.weight() * b.row(2).transpose();

    PlantStepResult out;
    out.state = step(state, wrench, cfg.inertia, cfg.dt);
    out.outputs = plant_outputs(out.state);
    return out;
}

double hover_trim_pitch(const PlantConfig& cfg) {
    RotorInflow hover;
    hover.omega = cfg.rotor_speed;
    return trim_collective(cfg.weight() / 6.0, hover, cfg.rotor, cfg.pitch_min, cfg.pitch_max);
}

}  // namespace hexctl
