#include "hexctl/controllers.hpp"

#include <algorithm>
#include <cmath>

#include "hexctl/rotor.hpp"

namespace hexctl {

void PidGains::validate() const {
    if (!(integrator_limit > 0.0)) throw ConfigError("pid: integrator_limit must be > 0");
    if (!(output_max > output_min)) throw ConfigError("pid: output_max must exceed output_min");
    if (deriv_tau < 0.0) throw ConfigError("pid: deriv_tau must be >= 0");
}

Pid::Pid(PidGains gains) : gains_(gains) { gains_.validate(); }

double Pid::step(double e, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("Pid::step: dt must be > 0");
    if (!primed_) {
        prev_error_ = e;
        primed_ = true;
    }
    const double raw_rate = (e - prev_error_) / dt;
    prev_error_ = e;
    if (gains_.deriv_tau > 0.0) {
        deriv_ += dt / (gains_.deriv_tau + dt) * (raw_rate - deriv_);
    } else {
        deriv_ = raw_rate;
    }

    const double trial = std::clamp(integral_ + e * dt, -gains_.integrator_limit,
                                    gains_.integrator_limit);
    double u = gains_.feedforward + gains_.kp * e + gains_.ki * trial + gains_.kd * deriv_;
    if (u > gains_.output_max || u < gains_.output_min) {
        // Anti-windup: hold the integrator while saturated.
        u = gains_.feedforward + gains_.kp * e + gains_.ki * integral_ + gains_.kd * deriv_;
        return std::clamp(u, gains_.output_min, gains_.output_max);
    }
    integral_ = trial;
    return u;
}

GController::GController(GControllerConfig cfg)
    : cfg_(cfg), rules_(2), learner_(cfg.evolution), sliding_(cfg.sliding) {
    sliding_.omega.resize(0);
    sliding_.gain.resize(0, 0);
    if (!(cfg_.deriv_tau >= 0.0)) throw ConfigError("g-controller: deriv_tau must be >= 0");
    if (!(cfg_.output_max > cfg_.output_min))
        throw ConfigError("g-controller: output_max must exceed output_min");
}

GTick GController::step(double error, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("GController::step: dt must be > 0");
    const int block = rules_.input_dim() + 1;

    // The adaptation laws drive the surface built on height minus reference,
    // so the tracking error flips sign at this boundary.
    const double e = -error;
    if (!primed_) {
        prev_error_ = e;
        primed_ = true;
    }
    const double raw_rate = (e - prev_error_) / dt;
    prev_error_ = e;
    if (cfg_.deriv_tau > 0.0) {
        error_rate_ += dt / (cfg_.deriv_tau + dt) * (raw_rate - error_rate_);
    } else {
        error_rate_ = raw_rate;
    }

    learner_.observe_error(std::abs(e));

    Eigen::VectorXd z(2);
    z << cfg_.input_gain_error * e, cfg_.input_gain_error_rate * error_rate_;

    bool grew = false;
    if (rules_.empty()) {
        const AddedRule added = learner_.add_rule(rules_, z);
        grow_rule_block(sliding_, block, added.donor);
        events_.push_back({t_, EventKind::Grow, added.index, 1.0});
        grew = true;
    } else {
        const GrowthDecision decision = learner_.growth_check(rules_, z);
        if (decision.grow) {
            const AddedRule added = learner_.add_rule(rules_, z);
            grow_rule_block(sliding_, block, added.donor);
            events_.push_back({t_, EventKind::Grow, added.index, decision.significance});
            grew = true;
        } else {
            const int winner = learner_.gart_update_winner(rules_, z);
            events_.push_back(
                {t_, EventKind::AdaptWinner, winner, firing_strength(rules_.rule(winner), z)});
        }
    }

    if (!grew && rules_.size() > 1) {
        const auto victims = learner_.prune_check(rules_);
        if (!victims.empty()) {
            std::vector<int> indices;
            for (const auto& v : victims) {
                events_.push_back({t_, EventKind::Prune, v.index, v.influence});
                indices.push_back(v.index);
            }
            learner_.remove_rules(rules_, indices);
            drop_rule_blocks(sliding_, block, indices);
        }
    }

    const InferenceResult inf = infer(rules_, z);
    learner_.record_firing(inf.weights);

    // Anti-windup: while the last command sat on an actuator limit, run the
    // integrators only in the direction that drives the command off it
    // (consequents move y_hat by -s, the surface integral moves u_r by -e).
    if (std::abs(e) <= cfg_.integral_gate &&
        !(sat_dir_ > 0 && e < 0.0) && !(sat_dir_ < 0 && e > 0.0))
        sliding_.error_integral = std::clamp(sliding_.error_integral + e * dt,
                                             -cfg_.integral_limit, cfg_.integral_limit);
    const double s = sliding_value(e, error_rate_, sliding_.error_integral, sliding_);
    const bool adapt_ok = !(sat_dir_ > 0 && s < 0.0) && !(sat_dir_ < 0 && s > 0.0);
    if (adapt_ok) {
        adapt_consequents(sliding_, inf.regressor, s, dt);
        for (int i = 0; i < rules_.size(); ++i)
            rules_.rule(i).consequent =
                sliding_.omega.segment(static_cast<Eigen::Index>(i) * block, block);
    }
    adapt_sliding_params(sliding_, s, e, error_rate_, dt);

    const double raw_u = cfg_.output_gain * inf.output + robustifying_term(s, sliding_) +
                         cfg_.feedforward;
    GTick tick;
    tick.u = std::clamp(raw_u, cfg_.output_min, cfg_.output_max);
    tick.saturated = tick.u != raw_u;
    sat_dir_ = raw_u > cfg_.output_max ? 1 : raw_u < cfg_.output_min ? -1 : 0;
    tick.s = s;
    tick.rule_count = rules_.size();
    tick.alpha1 = sliding_.alpha1;
    tick.alpha2 = sliding_.alpha2;
    tick.alpha3 = sliding_.alpha3;
    t_ += dt;
    return tick;
}

double GController::min_gain_eigenvalue() const {
    if (sliding_.gain.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sliding_.gain);
    return eig.eigenvalues().minCoeff();
}

AttitudeCommand attitude_hold(double roll, double pitch, double yaw,
                              const Eigen::Vector3d& rates, double yaw_ref,
                              const AttitudeGains& gains) {
    AttitudeCommand cmd;
    cmd.roll_cmd = -gains.roll_kp * roll - gains.roll_kd * rates.x();
    cmd.pitch_cmd = -gains.pitch_kp * pitch - gains.pitch_kd * rates.y();
    double yaw_err = yaw - yaw_ref;
    while (yaw_err > kPi) yaw_err -= 2.0 * kPi;
    while (yaw_err < -kPi) yaw_err += 2.0 * kPi;
    cmd.yaw_cmd = -gains.yaw_kp * yaw_err - gains.yaw_kd * rates.z();
    cmd.gimbal_warning = std::abs(pitch) > 80.0 * kPi / 180.0;
    return cmd;
}

}  // namespace hexctl
