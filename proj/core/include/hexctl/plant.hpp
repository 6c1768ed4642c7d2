#pragma once

#include <array>

#include "hexctl/rigid_body.hpp"
#include "hexctl/rotor.hpp"

namespace hexctl {

struct RotorStation {
    Eigen::Vector3d arm = Eigen::Vector3d::Zero();  // hub position, body frame [m]
    SpinDirection spin = SpinDirection::CW;
};

// Physical constants and integration settings of the simulated hexacopter.
// Rotor 1 sits on +x; arms form a regular hexagon with alternating spins.
struct PlantConfig {
    InertiaParams inertia;
    RotorParams rotor = RotorParams::from_radius(0.15);
    double rotor_speed = 600.0;    // Omega [rad/s], fixed; rotors are pitch-controlled
    double arm_length = 0.35;      // [m]
    double dt = 1e-3;              // [s]
    double pitch_min = 0.0;        // actuator limits on collective [rad]
    double pitch_max = 0.35;
    double sensor_noise_std = 0.0; // additive Gaussian noise on measured altitude [m]

    std::array<RotorStation, 6> stations() const;
    double weight() const { return inertia.mass * inertia.gravity; }
    void validate() const;  // throws ConfigError
};

// Per-rotor collective pitch after mixing and saturation.
struct MixedCommand {
    std::array<double, 6> collective{};
    bool saturated = false;
};

// theta_i = sat(thrust_cmd + roll_cmd*k_y + pitch_cmd*k_x + yaw_cmd*s_i) with
// k_x, k_y the normalized arm coordinates (k_y sign chosen so a positive roll
// command produces a positive roll moment) and s_i = +-1 by spin direction.
MixedCommand mix(double thrust_cmd, double roll_cmd, double pitch_cmd, double yaw_cmd,
                 const PlantConfig& cfg);

struct PlantOutputs {
    double altitude = 0.0;    // -Z, height above ground, positive up [m]
    double climb_rate = 0.0;  // d(altitude)/dt [m/s]
    double roll = 0.0;        // phi [rad]
    double pitch = 0.0;       // theta [rad]
    double yaw = 0.0;         // psi [rad]
};

struct PlantStepResult {
    RigidBodyState state;
    PlantOutputs outputs;
};

// Advances the vehicle one step: per-rotor local inflow -> thrust/torque,
// force and moment summation (thrust along body -z, gravity rotated into the
// body frame), then an RK4 rigid-body step.
PlantStepResult plant_step(const RigidBodyState& state, const MixedCommand& cmd,
                           const PlantConfig& cfg);

PlantOutputs plant_outputs(const RigidBodyState& state);

// Collective pitch that balances weight/6 per rotor at static hover.
double hover_trim_pitch(const PlantConfig& cfg);

}  // namespace hexctl
