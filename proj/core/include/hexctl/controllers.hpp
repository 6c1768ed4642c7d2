#pragma once

#include <vector>

#include "hexctl/evolving.hpp"
#include "hexctl/smc.hpp"

namespace hexctl {

// Altitude controllers receive only the tracking error e = reference - altitude
// and the step size; they never see plant parameters.

struct PidGains {
    double kp = 0.04;
    double ki = 0.005;
    double kd = 0.045;
    double integrator_limit = 1.0;   // |integral| bound [m*s]
    double output_min = 0.0;         // collective command range [rad]
    double output_max = 0.35;
    double deriv_tau = 0.02;         // derivative filter time constant [s], 0 = raw
    double feedforward = 0.0;        // collective bias [rad]

    void validate() const;
};

class Pid {
public:
    explicit Pid(PidGains gains);

    // u = ff + kp*e + ki*int(e) + kd*e_dot, clamped to the output range.
    // The integrator freezes while the output is saturated.
    double step(double e, double dt);

    double integral() const { return integral_; }
    double derivative() const { return deriv_; }
    const PidGains& gains() const { return gains_; }

private:
    PidGains gains_;
    double integral_ = 0.0;
    double prev_error_ = 0.0;
    double deriv_ = 0.0;
    bool primed_ = false;
};

struct GControllerConfig {
    EvolutionConfig evolution;
    SlidingState sliding;            // initial sliding parameters / rates
    double input_gain_error = 1.0;   // scale of e in the fuzzy input vector
    double input_gain_error_rate = 0.1;
    double output_gain = 1.0;        // fuzzy output -> collective [rad per unit]
    double feedforward = 0.0;        // collective bias [rad]; 0 = strict from-scratch
    double deriv_tau = 0.02;         // derivative filter time constant [s]
    double output_min = 0.0;
    double output_max = 0.35;
    // Anti-windup on the surface integral: accumulate only while |e| is
    // below the gate, and clamp the magnitude.
    double integral_gate = 0.25;     // [m]
    double integral_limit = 1.0;     // [m*s]
};

struct GTick {
    double u = 0.0;
    double s = 0.0;  // sliding value
    int rule_count = 0;
    double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
    bool saturated = false;
};

// Self-evolving neuro-fuzzy altitude controller.  Starts from an empty rule
// base; each tick runs error statistics, growth or winner adaptation,
// pruning, inference, consequent adaptation and sliding-parameter adaptation
// in that order.
class GController {
public:
    explicit GController(GControllerConfig cfg);

    GTick step(double error, double dt);

    const RuleBase& rules() const { return rules_; }
    const SlidingState& sliding() const { return sliding_; }
    const GControllerConfig& config() const { return cfg_; }
    const std::vector<EvolutionEvent>& events() const { return events_; }

    // Smallest eigenvalue of the adaptation gain matrix (diagnostic).
    double min_gain_eigenvalue() const;

private:
    GControllerConfig cfg_;
    RuleBase rules_;
    StructureLearner learner_;
    SlidingState sliding_;
    std::vector<EvolutionEvent> events_;
    double t_ = 0.0;
    double prev_error_ = 0.0;
    double error_rate_ = 0.0;
    int sat_dir_ = 0;  // -1 / 0 / +1: last command on an actuator limit
    bool primed_ = false;
};

struct AttitudeGains {
    double roll_kp = 0.6, roll_kd = 0.06;
    double pitch_kp = 0.6, pitch_kd = 0.06;
    double yaw_kp = 0.6, yaw_kd = 0.25;
};

struct AttitudeCommand {
    double roll_cmd = 0.0;
    double pitch_cmd = 0.0;
    double yaw_cmd = 0.0;
    bool gimbal_warning = false;  // |pitch| near +-90 deg
};

// PD attitude stabilization toward level flight (roll* = pitch* = 0) at the
// given yaw setpoint, with rate damping.  Shared by every altitude controller
// so comparisons isolate the altitude loop.
AttitudeCommand attitude_hold(double roll, double pitch, double yaw,
                              const Eigen::Vector3d& rates, double yaw_ref,
                              const AttitudeGains& gains);

}  // namespace hexctl
