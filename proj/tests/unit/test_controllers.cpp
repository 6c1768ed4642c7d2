#include <doctest.h>

#include <cmath>

#include "hexctl/controllers.hpp"

using namespace hexctl;

namespace {

PidGains wide_pid(double kp, double ki, double kd) {
    PidGains g;
    g.kp = kp;
    g.ki = ki;
    g.kd = kd;
    g.integrator_limit = 100.0;
    g.output_min = -1e6;
    g.output_max = 1e6;
    g.deriv_tau = 0.0;
    g.feedforward = 0.0;
    return g;
}

}  // namespace

TEST_CASE("pid: pure proportional") {
    Pid pid(wide_pid(2.0, 0.0, 0.0));
    CHECK(pid.step(0.5, 1e-3) == doctest::Approx(1.0));
}

TEST_CASE("pid: integrator freezes while the output saturates") {
    PidGains g = wide_pid(1.0, 1.0, 0.0);
    g.output_min = -0.1;
    g.output_max = 0.1;  // saturated immediately by e = 1
    Pid pid(g);
    for (int i = 0; i < 1000; ++i) {
        const double u = pid.step(1.0, 1e-3);
        CHECK(u == 0.1);
    }
    CHECK(pid.integral() == 0.0);
}

TEST_CASE("pid: critically damped double integrator tracks the closed form") {
    // x'' = u, unit mass; K_p = 1, K_d = 2 places both poles at -1, so the
    // unit step gives x(t) = 1 - (1 + t) e^-t.
    Pid pid(wide_pid(1.0, 0.0, 2.0));
    const double dt = 1e-4;
    double x = 0.0, v = 0.0;
    double overshoot = 0.0, worst = 0.0;
    for (int k = 0; k < 100000; ++k) {
        const double u = pid.step(1.0 - x, dt);
        v += u * dt;
        x += v * dt;
        const double t = (k + 1) * dt;
        overshoot = std::max(overshoot, x - 1.0);
        worst = std::max(worst, std::abs(x - (1.0 - (1.0 + t) * std::exp(-t))));
    }
    CHECK(overshoot <= 1e-3);
    CHECK(worst < 1e-3);
}

TEST_CASE("g-controller: first tick creates rule #1 and outputs robust + feedforward") {
    GControllerConfig cfg;
    cfg.feedforward = 0.1;
    GController ctrl(cfg);
    const GTick tick = ctrl.step(1.0, 1e-3);
    CHECK(tick.rule_count == 1);
    CHECK(ctrl.rules().size() == 1);
    // y_hat = 0 with zero consequents; u = ff + u_r(s at tick 1).
    const double u_r = robustifying_term(tick.s, ctrl.sliding());
    CHECK(tick.u == doctest::Approx(cfg.feedforward + u_r).epsilon(1e-12));
    CHECK(ctrl.events().size() == 1);
    CHECK(ctrl.events()[0].kind == EventKind::Grow);
}

TEST_CASE("g-controller: zero error forever is a fixed point") {
    GControllerConfig cfg;
    cfg.feedforward = 0.2;
    GController ctrl(cfg);
    double u_first = 0.0;
    for (int i = 0; i < 5000; ++i) {
        const GTick tick = ctrl.step(0.0, 1e-3);
        CHECK(tick.rule_count == 1);
        if (i == 0) {
            u_first = tick.u;
        } else {
            CHECK(tick.u == u_first);
        }
    }
    CHECK(ctrl.sliding().omega.cwiseAbs().maxCoeff() < 1e-9);
    CHECK(ctrl.sliding().error_integral == 0.0);
}

TEST_CASE("g-controller: identical error streams give identical tick and event streams") {
    auto drive = [](GController& ctrl) {
        std::vector<GTick> ticks;
        for (int i = 0; i < 4000; ++i) {
            const double t = i * 1e-3;
            const double e = 1.0 - 0.3 * std::sin(2.0 * t) - 0.2 * t;
            ticks.push_back(ctrl.step(e, 1e-3));
        }
        return ticks;
    };
    GController a{GControllerConfig{}}, b{GControllerConfig{}};
    const auto ta = drive(a);
    const auto tb = drive(b);
    REQUIRE(ta.size() == tb.size());
    for (size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta[i].u == tb[i].u);
        CHECK(ta[i].s == tb[i].s);
        CHECK(ta[i].rule_count == tb[i].rule_count);
    }
    REQUIRE(a.events().size() == b.events().size());
    for (size_t i = 0; i < a.events().size(); ++i) {
        CHECK(a.events()[i].t == b.events()[i].t);
        CHECK(a.events()[i].kind == b.events()[i].kind);
        CHECK(a.events()[i].rule_index == b.events()[i].rule_index);
        CHECK(a.events()[i].metric == b.events()[i].metric);
    }

    // Growth and pruning never fire on the same sample.
    for (size_t i = 0; i + 1 < a.events().size(); ++i) {
        if (a.events()[i].t == a.events()[i + 1].t) {
            const bool grow_prune = a.events()[i].kind == EventKind::Grow &&
                                    a.events()[i + 1].kind == EventKind::Prune;
            CHECK_FALSE(grow_prune);
        }
    }
}

TEST_CASE("g-controller: saturation keeps the command inside the actuator range") {
    GControllerConfig cfg;
    GController ctrl(cfg);
    for (int i = 0; i < 3000; ++i) {
        const GTick tick = ctrl.step(5.0 * std::sin(0.01 * i), 1e-3);
        CHECK(tick.u >= cfg.output_min);
        CHECK(tick.u <= cfg.output_max);
    }
}

TEST_CASE("attitude hold: level flight commands nothing") {
    const AttitudeCommand cmd =
        attitude_hold(0.0, 0.0, 0.0, Eigen::Vector3d::Zero(), 0.0, AttitudeGains{});
    CHECK(cmd.roll_cmd == 0.0);
    CHECK(cmd.pitch_cmd == 0.0);
    CHECK(cmd.yaw_cmd == 0.0);
    CHECK_FALSE(cmd.gimbal_warning);
}

TEST_CASE("attitude hold: positive roll commands the restoring sign") {
    AttitudeGains gains;
    const AttitudeCommand cmd =
        attitude_hold(0.1, 0.0, 0.0, Eigen::Vector3d::Zero(), 0.0, gains);
    CHECK(cmd.roll_cmd == doctest::Approx(-gains.roll_kp * 0.1));
}

TEST_CASE("attitude hold: flags proximity to gimbal lock") {
    const AttitudeCommand cmd =
        attitude_hold(0.0, 1.5, 0.0, Eigen::Vector3d::Zero(), 0.0, AttitudeGains{});
    CHECK(cmd.gimbal_warning);
}

#include "hexctl/plant.hpp"

TEST_CASE("attitude hold: rate impulse recovers within two seconds") {
    const PlantConfig plant;
    const AttitudeGains gains;
    const double trim = hover_trim_pitch(plant);
    RigidBodyState state;
    state.rates = Eigen::Vector3d(2.0, 0.0, 0.0);  // roll-rate impulse

    double roll_peak = 0.0;
    double roll_final = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const PlantOutputs out = plant_outputs(state);
        roll_peak = std::max(roll_peak, std::abs(out.roll));
        const AttitudeCommand att =
            attitude_hold(out.roll, out.pitch, out.yaw, state.rates, 0.0, gains);
        state = plant_step(state, mix(trim, att.roll_cmd, att.pitch_cmd, att.yaw_cmd, plant),
                           plant).state;
        roll_final = std::abs(plant_outputs(state).roll);
    }
    CHECK(roll_peak > 0.0);
    CHECK(roll_final < 0.02 * roll_peak);
}
