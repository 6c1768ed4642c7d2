#pragma once

#include <Eigen/Dense>

#include "hexctl/errors.hpp"

namespace hexctl {

// Scalar-first unit quaternion.
struct Quat {
    double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

    double norm() const;
    Quat normalized() const;
};

struct EulerAngles {
    double roll = 0.0;   // phi [rad]
    double pitch = 0.0;  // theta [rad]
    double yaw = 0.0;    // psi [rad]
};

// Full 6-DOF state.  Axes: body x forward, y right, z down; inertial z down
// (altitude above ground is -position.z()).
struct RigidBodyState {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();  // X, Y, Z [m], inertial
    Eigen::Vector3d velocity = Eigen::Vector3d::Zero();  // u, v, w [m/s], body axes
    Eigen::Vector3d rates = Eigen::Vector3d::Zero();     // p, q, r [rad/s], body axes
    Quat attitude;
};

struct InertiaParams {
    double mass = 3.0;     // [kg]
    double ixx = 0.04;     // [kg m^2]
    double iyy = 0.04;     // [kg m^2]
    double izz = 0.06;     // [kg m^2]
    double ixz = 0.0;      // [kg m^2]
    double gravity = 9.81; // [m/s^2]

    void validate() const;  // throws ConfigError
};

// Net force and moment in body axes; the caller folds gravity into force.
struct WrenchInput {
    Eigen::Vector3d force = Eigen::Vector3d::Zero();   // F_x, F_y, F_z [N]
    Eigen::Vector3d moment = Eigen::Vector3d::Zero();  // L, M, N [N*m]
};

struct StateRate {
    Eigen::Vector3d position_rate = Eigen::Vector3d::Zero();
    Eigen::Vector3d velocity_rate = Eigen::Vector3d::Zero();
    Eigen::Vector3d rate_rate = Eigen::Vector3d::Zero();
    Quat attitude_rate{0.0, 0.0, 0.0, 0.0};
};

Quat euler_to_quaternion(double roll, double pitch, double yaw);
EulerAngles quaternion_to_euler(const Quat& q);

// q_dot for body rates (p, q, r); orthogonal to q, so the norm is preserved
// along the continuous flow.
Quat quaternion_derivative(const Quat& q, const Eigen::Vector3d& rates);

// Body-to-inertial rotation matrix B: global velocity = B * body velocity.
Eigen::Matrix3d rotation_matrix(const Quat& q);

// Newton-Euler accelerations.  Roll and yaw moment rows are solved jointly
// through the I_xz coupling; requires I_x I_z - I_xz^2 > 0.
StateRate body_derivatives(const RigidBodyState& s, const WrenchInput& w, const InertiaParams& j);

// Classical RK4 step with the wrench held constant; the quaternion is
// renormalized afterwards.  Throws NumericError naming the first non-finite
// field when the state blows up.
RigidBodyState step(const RigidBodyState& s, const WrenchInput& w, const InertiaParams& j,
                    double dt);

}  // namespace hexctl
