#include "hexctl/rigid_body.hpp"

#include <cmath>
#include <string>

namespace hexctl {

double Quat::norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }

Quat Quat::normalized() const {
    const double n = norm();
    return Quat{w / n, x / n, y / n, z / n};
}

void InertiaParams::validate() const {
    if (!(mass > 0.0)) throw ConfigError("inertia: mass must be > 0");
    if (!(ixx > 0.0 && iyy > 0.0 && izz > 0.0))
        throw ConfigError("inertia: principal moments must be > 0");
    if (!(ixx * izz - ixz * ixz > 0.0))
        throw ConfigError("inertia: I_x I_z - I_xz^2 must be > 0");
}

Quat euler_to_quaternion(double roll, double pitch, double yaw) {
    const double cr = std::cos(roll / 2), sr = std::sin(roll / 2);
    const double cp = std::cos(pitch / 2), sp = std::sin(pitch / 2);
    const double cy = std::cos(yaw / 2), sy = std::sin(yaw / 2);
    return Quat{cr * cp * cy + sr * sp * sy,
                sr * cp * cy - cr * sp * sy,
                cr * sp * cy + sr * cp * sy,
                cr * cp * sy - sr * sp * cy};
}

EulerAngles quaternion_to_euler(const Quat& q) {
    const Eigen::Matrix3d b = rotation_matrix(q);
    EulerAngles e;
    e.roll = std::atan2(b(2, 1), b(2, 2));
    e.pitch = -std::asin(std::clamp(b(2, 0), -1.0, 1.0));
    e.yaw = std::atan2(b(1, 0), b(0, 0));
    return e;
}

Quat quaternion_derivative(const Quat& q, const Eigen::Vector3d& rates) {
    const double p = rates.x(), qr = rates.y(), r = rates.z();
    return Quat{-0.5 * (p * q.x + qr * q.y + r * q.z),
                0.5 * (p * q.w + r * q.y - qr * q.z),
                0.5 * (qr * q.w - r * q.x + p * q.z),
                0.5 * (r * q.w + qr * q.x - p * q.y)};
}

Eigen::Matrix3d rotation_matrix(const Quat& q) {
    const double w = q.w, x = q.x, y = q.y, z = q.z;
    Eigen::Matrix3d b;
    b << w * w + x * x - y * y - z * z, 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
         2.0 * (x * y + w * z), w * w - x * x + y * y - z * z, 2.0 * (y * z - w * x),
         2.0 * (x * z - w * y), 2.0 * (y * z + w * x), w * w - x * x - y * y + z * z;
    return b;
}

StateRate body_derivatives(const RigidBodyState& s, const WrenchInput& w_in,
                           const InertiaParams& j) {
    const double det = j.ixx * j.izz - j.ixz * j.ixz;
    if (!(det > 0.0)) throw ConfigError("body_derivatives: singular inertia coupling");

    const double u = s.velocity.x(), v = s.velocity.y(), w = s.velocity.z();
    const double p = s.rates.x(), q = s.rates.y(), r = s.rates.z();

    StateRate rate;
    rate.velocity_rate.x() = w_in.force.x() / j.mass - q * w + r * v;
    rate.velocity_rate.y() = w_in.force.y() / j.mass - r * u + p * w;
    rate.velocity_rate.z() = w_in.force.z() / j.mass - p * v + q * u;

    // L and N rows couple p_dot and r_dot through I_xz.
    const double l_eff = w_in.moment.x() - q * r * (j.izz - j.iyy) + j.ixz * p * q;
    const double n_eff = w_in.moment.z() - p * q * (j.iyy - j.ixx) - j.ixz * q * r;
    rate.rate_rate.x() = (l_eff * j.izz + n_eff * j.ixz) / det;
    rate.rate_rate.z() = (l_eff * j.ixz + n_eff * j.ixx) / det;
    rate.rate_rate.y() =
        (w_in.moment.y() - r * p * (j.ixx - j.izz) - j.ixz * (p * p - r * r)) / j.iyy;

    rate.attitude_rate = quaternion_derivative(s.attitude, s.rates);
    rate.position_rate = rotation_matrix(s.attitude) * s.velocity;
    return rate;
}

namespace {

RigidBodyState advance(const RigidBodyState& s, const StateRate& k, double h) {
    RigidBodyState out;
    out.position = s.position + h * k.position_rate;
    out.velocity = s.velocity + h * k.velocity_rate;
    out.rates = s.rates + h * k.rate_rate;
    out.attitude = Quat{s.attitude.w + h * k.attitude_rate.w, s.attitude.x + h * k.attitude_rate.x,
                        s.attitude.y + h * k.attitude_rate.y, s.attitude.z + h * k.attitude_rate.z};
    return out;
}

StateRate blend(const StateRate& k1, const StateRate& k2, const StateRate& k3,
                const StateRate& k4) {
    auto mix3 = [](const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                   const Eigen::Vector3d& d) { return (a + 2.0 * b + 2.0 * c + d) / 6.0; };
    StateRate out;
    out.position_rate = mix3(k1.position_rate, k2.position_rate, k3.position_rate, k4.position_rate);
    out.velocity_rate = mix3(k1.velocity_rate, k2.velocity_rate, k3.velocity_rate, k4.velocity_rate);
    out.rate_rate = mix3(k1.rate_rate, k2.rate_rate, k3.rate_rate, k4.rate_rate);
    out.attitude_rate =
        Quat{(k1.attitude_rate.w + 2.0 * k2.attitude_rate.w + 2.0 * k3.attitude_rate.w + k4.attitude_rate.w) / 6.0,
             (k1.attitude_rate.x + 2.0 * k2.attitude_rate.x + 2.0 * k3.attitude_rate.x + k4.attitude_rate.x) / 6.0,
             (k1.attitude_rate.y + 2.0 * k2.attitude_rate.y + 2.0 * k3.attitude_rate.y + k4.attitude_rate.y) / 6.0,
             (k1.attitude_rate.z + 2.0 * k2.attitude_rate.z + 2.0 * k3.attitude_rate.z + k4.attitude_rate.z) / 6.0};
    return out;
}

void check_finite(const RigidBodyState& s) {
    struct Field {
        const char* name;
        double value;
    };
    const Field fields[] = {
        {"position.X", s.position.x()}, {"position.Y", s.position.y()},
        {"position.Z", s.position.z()}, {"velocity.u", s.velocity.x()},
        {"velocity.v", s.velocity.y()}, {"velocity.w", s.velocity.z()},
        {"rates.p", s.rates.x()},       {"rates.q", s.rates.y()},
        {"rates.r", s.rates.z()},       {"attitude.q0", s.attitude.w},
        {"attitude.q1", s.attitude.x},  {"attitude.q2", s.attitude.y},
        {"attitude.q3", s.attitude.z},
    };
    for (const auto& f : fields) {
        if (!std::isfinite(f.value))
            throw NumericError(std::string("rigid_body::step: non-finite ") + f.name);
    }
}

}  // namespace

RigidBodyState step(const RigidBodyState& s, const WrenchInput& w, const InertiaParams& j,
                    double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("rigid_body::step: dt must be > 0");
    const StateRate k1 = body_derivatives(s, w, j);
    const StateRate k2 = body_derivatives(advance(s, k1, dt / 2.0), w, j);
    const StateRate k3 = body_derivatives(advance(s, k2, dt / 2.0), w, j);
    const StateRate k4 = body_derivatives(advance(s, k3, dt), w, j);
    RigidBodyState out = advance(s, blend(k1, k2, k3, k4), dt);
    check_finite(out);
    out.attitude = out.attitude.normalized();
    return out;
}

}  // namespace hexctl
