#pragma once

#include <numbers>

#include "hexctl/errors.hpp"

namespace hexctl {

enum class SpinDirection { CW, CCW };

inline double spin_sign(SpinDirection s) { return s == SpinDirection::CW ? 1.0 : -1.0; }

// Geometric and aerodynamic constants of a single rotor.
//
// Thrust follows the blade-element closed form
//   T = (rho * a * (Omega R)^2 * A_b / 2) * [theta0/3 * (1 + 3/2 mu^2) - lambda/2]
// with inflow ratio lambda = (V_i + V_n)/(Omega R) and advance ratio
// mu = V_t/(Omega R).  Induced velocity V_i comes from the momentum-theory
// closed form (see induced_velocity).  Power is induced + climb + profile,
// yaw torque is P_tot/Omega signed by the spin direction.
struct RotorParams {
    double blade_radius = 0.15;        // R_b [m]
    double disc_area = 0.0;            // A = pi * R_b^2 [m^2]
    double blade_area = 0.0;           // A_b = solidity * A [m^2]
    double lift_slope = 5.7;           // a [1/rad]
    double solidity = 0.05;            // sigma
    double profile_drag = 0.011;       // C_D0
    double induced_correction = 1.15;  // k_ind, non-uniform inflow / tip losses
    double forward_correction = 4.6;   // kappa, skewed-flow correction
    double air_density = 1.225;        // rho [kg/m^3]
    SpinDirection spin = SpinDirection::CW;

    // Fills the derived areas from radius and solidity.
    static RotorParams from_radius(double radius, double sol = 0.05);

    double tip_speed(double omega) const { return omega * blade_radius; }

    void validate() const;  // throws ConfigError
};

// Operating point of one rotor: local airflow plus the commanded collective.
struct RotorInflow {
    double normal = 0.0;      // V_n [m/s], airflow component into the disc from above
    double tangential = 0.0;  // V_t [m/s], in-plane airflow magnitude at the hub
    double climb = 0.0;       // V_c [m/s], climb speed of the rotor station
    double omega = 600.0;     // Omega [rad/s], rotor angular speed
    double collective = 0.0;  // theta0 [rad], blade pitch
};

struct RotorOutput {
    double thrust = 0.0;            // T [N]
    double induced_velocity = 0.0;  // V_i [m/s]
    double yaw_torque = 0.0;        // N_q [N*m], signed by spin direction
    double power = 0.0;             // P_tot [W]
};

struct ThrustSolution {
    double thrust = 0.0;
    double induced_velocity = 0.0;
    int iterations = 0;
    bool negative_thrust = false;  // stall-region input, value returned unclamped
};

struct TorquePower {
    double yaw_torque = 0.0;
    double power = 0.0;
};

// Induced velocity through the disc for a given thrust:
//   V_i^2 = sqrt((W/2)^2 + (T / 2 rho A)^2) - W/2,  W = V_n^2 + V_t^2.
// W is the squared freestream at the disc; at hover this reduces to the
// momentum-theory result V_i = sqrt(T / (2 rho A)).
double induced_velocity(double thrust, const RotorInflow& inflow, const RotorParams& params);

// Solves the coupled thrust / induced-velocity pair by damped fixed-point
// iteration (relaxation 0.5, cap 500, residual < 1e-9).  Throws NumericError
// on non-convergence, carrying the last iterate in the message.
ThrustSolution rotor_thrust(const RotorInflow& inflow, const RotorParams& params);

// P_ind = k_ind T V_i + T V_c,  P_0 = (sigma C_D0 / 8) rho A (Omega R)^3 (1 + kappa mu^2),
// N_q = spin_sign * (P_ind + P_0) / Omega.  Throws NumericError when omega == 0.
TorquePower rotor_torque_power(double thrust, double induced_velocity, const RotorInflow& inflow,
                               const RotorParams& params);

// Thrust, induced velocity, torque and power of one rotor in a single call.
RotorOutput rotor_forces(const RotorInflow& inflow, const RotorParams& params);

// Collective pitch that trims one rotor to the target thrust at the given
// inflow, found by bisection over [pitch_lo, pitch_hi].  Throws NumericError
// when the target is not bracketed.
double trim_collective(double target_thrust, const RotorInflow& inflow, const RotorParams& params,
                       double pitch_lo = 0.0, double pitch_hi = 0.35);

inline constexpr double kPi = std::numbers::pi;

}  // namespace hexctl
