#include <doctest.h>

#include <cmath>
#include <sstream>

#include "hexctl/sim.hpp"

using namespace hexctl;

TEST_CASE("reference: paper trajectories at their cited points") {
    Trajectory constant{TrajectoryKind::Constant, 1.0, 0.1, 5.0};
    CHECK(reference(constant, 0.0) == 1.0);
    CHECK(reference(constant, 42.0) == 1.0);

    Trajectory step{TrajectoryKind::Step, 2.0, 0.1, 5.0};
    CHECK(reference(step, 3.0) == 1.0);
    CHECK(reference(step, 6.0) == 2.0);
    CHECK(reference(step, 0.0) == 1.0);

    Trajectory sine{TrajectoryKind::Sine, 2.0, 0.1, 5.0};
    CHECK(reference(sine, 2.5) == doctest::Approx(2.0).epsilon(1e-12));

    Trajectory tri{TrajectoryKind::Triangle, 2.0, 0.1, 5.0};
    CHECK(reference(tri, 0.0) == 0.0);
    CHECK(reference(tri, 2.5) == doctest::Approx(2.0));
    CHECK(reference(tri, 7.5) == doctest::Approx(-2.0));
}

TEST_CASE("reference: periodic kinds repeat with period 1/f") {
    for (TrajectoryKind kind :
         {TrajectoryKind::Sine, TrajectoryKind::Triangle, TrajectoryKind::Sawtooth}) {
        Trajectory traj{kind, 2.0, 0.1, 5.0};
        for (double t = 0.0; t < 10.0; t += 0.37)
            CHECK(std::abs(reference(traj, t) - reference(traj, t + 10.0)) < 1e-12);
    }
}

TEST_CASE("reference: unknown kind name is a config error") {
    CHECK_THROWS_AS(trajectory_kind_from_string("spiral"), ConfigError);
}

TEST_CASE("metrics: a perfect log scores zero everywhere") {
    SimLog log;
    for (int k = 0; k < 1000; ++k)
        log.rows.push_back(LogRow{k * 1e-3, 1.0, 1.0, 0.0, 0.2, 1, 0, 0, 0, 0});
    const Metrics m = compute_metrics(log, Trajectory{TrajectoryKind::Constant, 1.0, 0.1, 5.0});
    CHECK(m.rmse == 0.0);
    CHECK(m.settling_time == 0.0);
    CHECK(m.rise_time == 0.0);
    CHECK(m.peak_overshoot == 0.0);
    CHECK(m.settled);
}

TEST_CASE("metrics: first-order response hits the analytic rise and settling times") {
    const double tau = 0.8, dt = 1e-3;
    SimLog log;
    for (int k = 0; k < 10000; ++k) {
        const double t = k * dt;
        const double z = 1.0 - std::exp(-t / tau);
        log.rows.push_back(LogRow{t, 1.0, z, 1.0 - z, 0, 0, 0, 0, 0, 0});
    }
    const Metrics m = compute_metrics(log, Trajectory{TrajectoryKind::Constant, 1.0, 0.1, 5.0});
    CHECK(std::abs(m.rise_time - tau * std::log(9.0)) <= dt + 1e-12);
    CHECK(std::abs(m.settling_time - tau * std::log(50.0)) <= dt + 1e-12);
    CHECK(m.settled);
}

TEST_CASE("metrics: a log that never enters the band reports the duration, flagged") {
    SimLog log;
    for (int k = 0; k < 100; ++k)
        log.rows.push_back(LogRow{k * 1e-3, 1.0, 0.5, 0.5, 0, 0, 0, 0, 0, 0});
    const Metrics m = compute_metrics(log, Trajectory{TrajectoryKind::Constant, 1.0, 0.1, 5.0});
    CHECK_FALSE(m.settled);
    CHECK(m.settling_time == doctest::Approx(0.099));
}

TEST_CASE("run csv round-trips bit-exactly") {
    SimLog log;
    log.rows.push_back(LogRow{0.001, 1.0, 0.123456789012345678, -0.3, 0.235, 3, -0.7, 1e-6,
                              0.01, -0.02});
    log.rows.push_back(LogRow{0.002, 1.0, 1.0 / 3.0, 2.0 / 7.0, 0.1, 1, 0.0, 0.5, 0.0, 0.0});
    std::ostringstream os;
    write_run_csv(os, log);
    std::istringstream is(os.str());
    const SimLog back = read_run_csv(is);
    REQUIRE(back.rows.size() == log.rows.size());
    for (size_t i = 0; i < log.rows.size(); ++i) {
        CHECK(back.rows[i].t == log.rows[i].t);
        CHECK(back.rows[i].z == log.rows[i].z);
        CHECK(back.rows[i].e == log.rows[i].e);
        CHECK(back.rows[i].u == log.rows[i].u);
        CHECK(back.rows[i].rule_count == log.rows[i].rule_count);
        CHECK(back.rows[i].alpha1 == log.rows[i].alpha1);
    }
}

TEST_CASE("config: defaults parse and validate") {
    std::istringstream is(default_config_text());
    const RunConfig cfg = parse_run_config(is);
    CHECK(cfg.plant.inertia.mass == 3.0);
    CHECK(cfg.controller == "g");
    CHECK(cfg.gctrl.feedforward == 0.0);
    CHECK(cfg.pid.feedforward > 0.0);  // auto = hover trim
    CHECK(cfg.pid.feedforward == doctest::Approx(hover_trim_pitch(cfg.plant)));
}

TEST_CASE("config: unknown keys and malformed lines are config errors") {
    std::istringstream bad_key("no_such_key = 1\n");
    CHECK_THROWS_AS(parse_run_config(bad_key), ConfigError);
    std::istringstream bad_line("mass 3.0\n");
    CHECK_THROWS_AS(parse_run_config(bad_line), ConfigError);
    std::istringstream bad_value("mass = heavy\n");
    CHECK_THROWS_AS(parse_run_config(bad_value), ConfigError);
    std::istringstream bad_controller("controller = lqr\n");
    CHECK_THROWS_AS(parse_run_config(bad_controller), ConfigError);
}

TEST_CASE("config: periodic references must cover one full cycle") {
    std::istringstream is("trajectory = sine\nduration = 5\nfrequency = 0.1\n");
    CHECK_THROWS_AS(parse_run_config(is), ConfigError);
}

namespace {

RunConfig short_run(const std::string& controller, double duration = 2.0) {
    std::istringstream is(default_config_text());
    RunConfig cfg = parse_run_config(is);
    cfg.controller = controller;
    cfg.duration = duration;
    return cfg;
}

}  // namespace

TEST_CASE("run_sim: zero duration gives a header-only log") {
    RunConfig cfg = short_run("pid", 0.0);
    const RunResult res = run_sim(cfg);
    CHECK(res.log.rows.empty());
    std::ostringstream os;
    write_run_csv(os, res.log);
    CHECK(os.str() == std::string(kRunCsvHeader) + "\n");
}

TEST_CASE("run_sim: identical configs produce byte-identical csv logs") {
    const RunConfig cfg = short_run("g", 3.0);
    std::ostringstream a, b;
    write_run_csv(a, run_sim(cfg).log);
    write_run_csv(b, run_sim(cfg).log);
    CHECK(a.str() == b.str());
    CHECK(a.str().size() > 1000);
}

TEST_CASE("run_sim: log times are exactly k * dt") {
    const RunConfig cfg = short_run("pid", 1.0);
    const RunResult res = run_sim(cfg);
    REQUIRE(res.log.rows.size() == 1000);
    for (size_t k = 0; k < res.log.rows.size(); ++k)
        CHECK(res.log.rows[k].t == static_cast<double>(k) * cfg.dt());
}

TEST_CASE("run_sim: seeded sensor noise is reproducible and seed-sensitive") {
    RunConfig cfg = short_run("pid", 1.0);
    cfg.plant.sensor_noise_std = 0.01;
    const RunResult a = run_sim(cfg);
    const RunResult b = run_sim(cfg);
    cfg.seed = 2;
    const RunResult c = run_sim(cfg);
    CHECK(a.log.rows[500].z == b.log.rows[500].z);
    CHECK(a.log.rows[500].z != c.log.rows[500].z);
}

TEST_CASE("run_sim: in-run metrics match metrics recomputed from the persisted csv") {
    const RunConfig cfg = short_run("pid", 2.0);
    const RunResult res = run_sim(cfg);
    std::ostringstream os;
    write_run_csv(os, res.log);
    std::istringstream is(os.str());
    const SimLog back = read_run_csv(is);
    const Metrics again = compute_metrics(back, cfg.trajectory);
    CHECK(again.rmse == res.metrics.rmse);
    CHECK(again.rise_time == res.metrics.rise_time);
    CHECK(again.settling_time == res.metrics.settling_time);
    CHECK(again.peak_overshoot == res.metrics.peak_overshoot);
}

TEST_CASE("compare: rejects empty input and mismatched trajectories") {
    CHECK_THROWS_AS(compare({}), ConfigError);
    RunConfig a = short_run("pid");
    RunConfig b = short_run("g");
    b.trajectory.kind = TrajectoryKind::Step;
    CHECK_THROWS_AS(compare({a, b}), ConfigError);
}

TEST_CASE("compare: identical configs give identical metric rows") {
    const RunConfig cfg = short_run("pid", 2.0);
    const auto rows = compare({cfg, cfg});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].metrics.rmse == rows[1].metrics.rmse);
    CHECK(rows[0].metrics.settling_time == rows[1].metrics.settling_time);
}

TEST_CASE("events csv uses the documented header and kinds") {
    std::vector<EvolutionEvent> events{{0.5, EventKind::Grow, 1, 0.25},
                                       {0.7, EventKind::Prune, 0, 0.001},
                                       {0.9, EventKind::AdaptWinner, 1, 0.8}};
    std::ostringstream os;
    write_events_csv(os, events);
    const std::string text = os.str();
    CHECK(text.find("t,kind,rule_idx,metric") == 0);
    CHECK(text.find("grow") != std::string::npos);
    CHECK(text.find("prune") != std::string::npos);
    CHECK(text.find("adapt-winner") != std::string::npos);
}
