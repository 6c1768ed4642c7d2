#include "hexctl/rotor.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hexctl {

RotorParams RotorParams::from_radius(double radius, double sol) {
    RotorParams p;
    p.blade_radius = radius;
    p.solidity = sol;
    p.disc_area = kPi * radius * radius;
    p.blade_area = sol * p.disc_area;
    return p;
}

void RotorParams::validate() const {
    if (!(blade_radius > 0.0)) throw ConfigError("rotor: blade_radius must be > 0");
    if (disc_area != kPi * blade_radius * blade_radius)
        throw ConfigError("rotor: disc_area must equal pi * blade_radius^2");
    if (!(solidity > 0.0 && solidity < 1.0)) throw ConfigError("rotor: solidity must be in (0,1)");
    if (!(air_density > 0.0)) throw ConfigError("rotor: air_density must be > 0");
    if (!(lift_slope > 0.0)) throw ConfigError("rotor: lift_slope must be > 0");
}

double induced_velocity(double thrust, const RotorInflow& inflow, const RotorParams& params) {
    if (thrust < 0.0) throw std::invalid_argument("induced_velocity: thrust must be >= 0");
    if (thrust == 0.0) return 0.0;
    const double h = thrust / (2.0 * params.air_density * params.disc_area);
    const double w = inflow.normal * inflow.normal + inflow.tangential * inflow.tangential;
    const double vi_sq = std::sqrt(0.25 * w * w + h * h) - 0.5 * w;
    return std::sqrt(std::max(vi_sq, 0.0));
}

ThrustSolution rotor_thrust(const RotorInflow& inflow, const RotorParams& params) {
    if (!(inflow.omega > 0.0)) throw std::invalid_argument("rotor_thrust: omega must be > 0");

    const double tip = params.tip_speed(inflow.omega);
    const double mu = inflow.tangential / tip;
    const double scale =
        params.air_density * params.lift_slope * tip * tip * params.blade_area / 2.0;
    const double pitch_term = inflow.collective / 3.0 * (1.0 + 1.5 * mu * mu);

    // Residual of the coupled pair; strictly decreasing in T because V_i is
    // nondecreasing in T.  Negative trial thrust induces no flow.
    auto residual = [&](double t) {
        const double vi = induced_velocity(std::max(t, 0.0), inflow, params);
        return scale * (pitch_term - 0.5 * (vi + inflow.normal) / tip) - t;
    };

    // Root of the zero-inflow branch.  For t0 <= 0 it is the exact solution
    // (stall-region input, returned unclamped).  Otherwise it brackets the
    // root together with T = 0, and bisection always converges; a damped
    // fixed point does not, since dV_i/dT is unbounded near zero inflow.
    const double t0 = scale * (pitch_term - 0.5 * inflow.normal / tip);
    if (t0 <= 0.0) {
        if (!std::isfinite(t0)) throw NumericError("rotor_thrust: non-finite inputs");
        return ThrustSolution{t0, 0.0, 1, t0 < 0.0};
    }
    constexpr int kMaxIter = 500;
    double lo = 0.0, hi = t0;
    int iterations = 0;
    while (hi - lo > 1e-14 * (1.0 + hi) && iterations < kMaxIter) {
        const double mid = 0.5 * (lo + hi);
        if (residual(mid) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++iterations;
    }
    const double thrust = 0.5 * (lo + hi);
    if (!std::isfinite(thrust)) {
        std::ostringstream msg;
        msg << "rotor_thrust: solve diverged (last T=" << thrust << " N)";
        throw NumericError(msg.str());
    }
    const double vi = induced_velocity(std::max(thrust, 0.0), inflow, params);
    return ThrustSolution{thrust, vi, iterations, thrust < 0.0};
}

TorquePower rotor_torque_power(double thrust, double induced_vel, const RotorInflow& inflow,
                               const RotorParams& params) {
    if (inflow.omega == 0.0) throw NumericError("rotor_torque_power: omega is zero");

    const double tip = params.tip_speed(inflow.omega);
    const double mu = inflow.tangential / tip;
    const double p_ind = params.induced_correction * thrust * induced_vel + thrust * inflow.climb;
    const double p_profile = params.solidity * params.profile_drag / 8.0 * params.air_density *
                             params.disc_area * tip * tip * tip *
                             (1.0 + params.forward_correction * mu * mu);
    const double p_tot = p_ind + p_profile;
    return TorquePower{spin_sign(params.spin) * p_tot / inflow.omega, p_tot};
}

RotorOutput rotor_forces(const RotorInflow& inflow, const RotorParams& params) {
    const ThrustSolution sol = rotor_thrust(inflow, params);
    const TorquePower tp = rotor_torque_power(sol.thrust, sol.induced_velocity, inflow, params);
    return RotorOutput{sol.thrust, sol.induced_velocity, tp.yaw_torque, tp.power};
}

double trim_collective(double target_thrust, const RotorInflow& inflow, const RotorParams& params,
                       double pitch_lo, double pitch_hi) {
    auto thrust_at = [&](double pitch) {
        RotorInflow in = inflow;
        in.collective = pitch;
        return rotor_thrust(in, params).thrust - target_thrust;
    };
    double f_lo = thrust_at(pitch_lo);
    double f_hi = thrust_at(pitch_hi);
    if (f_lo * f_hi > 0.0)
        throw NumericError("trim_collective: target thrust not bracketed by pitch range");
    double lo = pitch_lo, hi = pitch_hi;
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = thrust_at(mid);
        if (f_lo * f_mid <= 0.0) {
            hi = mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
        if (hi - lo < 1e-14) break;
    }
    return 0.5 * (lo + hi);
}

}  // namespace hexctl
