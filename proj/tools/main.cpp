// hexctl: closed-loop hexacopter altitude-control simulator.
//
//   hexctl run     --config <file> [--out <dir>]
//   hexctl compare --config <file> --controllers pid,g [--trajectories a,b,...] [--out <dir>]
//   hexctl metrics --log <run.csv> [--kind <trajectory>]
//   hexctl print-config
//
// The HEXCTL_CONFIG environment variable overrides the config path (and only
// that).  Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hexctl/sim.hpp"

namespace {

std::string resolve_config_path(const std::string& flag_value) {
    if (const char* env = std::getenv("HEXCTL_CONFIG"); env && *env) return env;
    if (!flag_value.empty()) return flag_value;
    throw hexctl::ConfigError("no config file given (use --config or HEXCTL_CONFIG)");
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw hexctl::ConfigError("cannot write " + path.string());
    os << contents;
}

int do_run(const std::string& config_flag, const std::string& out_flag) {
    hexctl::RunConfig cfg = hexctl::load_run_config(resolve_config_path(config_flag));
    if (!out_flag.empty()) cfg.out_dir = out_flag;

    const hexctl::RunResult res = hexctl::run_sim(cfg);

    const std::filesystem::path out(cfg.out_dir);
    std::filesystem::create_directories(out);
    {
        std::ostringstream os;
        hexctl::write_run_csv(os, res.log);
        write_file(out / "run.csv", os.str());
    }
    {
        std::ostringstream os;
        hexctl::write_adaptation_csv(os, res.telemetry);
        write_file(out / "adaptation.csv", os.str());
    }
    if (cfg.controller == "g") {
        std::ostringstream os;
        hexctl::write_events_csv(os, res.events);
        write_file(out / "events.csv", os.str());
        if (res.final_rules) {
            std::ostringstream rs;
            hexctl::write_rule_dump(rs, *res.final_rules);
            write_file(out / "rules.csv", rs.str());
        }
    }

    if (res.log.aborted) {
        std::cerr << "run aborted: " << res.log.abort_reason << "\n";
        std::cerr << "partial log written to " << (out / "run.csv") << "\n";
        return 3;
    }

    const hexctl::Metrics& m = res.metrics;
    std::cout << "run: " << cfg.controller << " on " << to_string(cfg.trajectory.kind) << ", "
              << cfg.duration << " s at dt=" << cfg.dt() << " s\n";
    std::cout << "  rmse           " << m.rmse << " m\n";
    std::cout << "  rise_time      " << m.rise_time << " s\n";
    std::cout << "  settling_time  " << m.settling_time << " s" << (m.settled ? "" : " (not settled)")
              << "\n";
    std::cout << "  peak_overshoot " << m.peak_overshoot << "\n";
    std::cout << "logs written to " << out << "\n";
    return 0;
}

int do_compare(const std::string& config_flag, const std::string& controllers_csv,
               const std::string& trajectories_csv, const std::string& out_flag) {
    const hexctl::RunConfig base = hexctl::load_run_config(resolve_config_path(config_flag));
    const std::vector<std::string> controllers = split_list(controllers_csv);
    if (controllers.empty()) throw hexctl::ConfigError("compare: --controllers list is empty");

    std::vector<hexctl::Trajectory> trajectories;
    if (trajectories_csv.empty()) {
        trajectories.push_back(base.trajectory);
    } else {
        for (const auto& name : split_list(trajectories_csv)) {
            hexctl::Trajectory t = base.trajectory;
            t.kind = hexctl::trajectory_kind_from_string(name);
            trajectories.push_back(t);
        }
    }

    std::vector<hexctl::ComparisonRow> all;
    for (const auto& traj : trajectories) {
        std::vector<hexctl::RunConfig> group;
        for (const auto& name : controllers) {
            hexctl::RunConfig cfg = base;
            cfg.controller = name;
            cfg.trajectory = traj;
            group.push_back(cfg);
        }
        for (auto& row : hexctl::compare(group)) all.push_back(row);
    }

    std::cout << hexctl::format_comparison_table(all);
    if (!out_flag.empty()) {
        std::filesystem::create_directories(out_flag);
        std::ostringstream os;
        hexctl::write_comparison_csv(os, all);
        write_file(std::filesystem::path(out_flag) / "comparison.csv", os.str());
        std::cout << "comparison.csv written to " << out_flag << "\n";
    }
    return 0;
}

int do_metrics(const std::string& log_path, const std::string& kind_flag) {
    std::ifstream is(log_path);
    if (!is) throw hexctl::ConfigError("cannot open log file: " + log_path);
    const hexctl::SimLog log = hexctl::read_run_csv(is);
    if (log.rows.empty()) throw hexctl::ConfigError("metrics: log has no rows");

    hexctl::Trajectory traj;
    if (!kind_flag.empty()) {
        traj.kind = hexctl::trajectory_kind_from_string(kind_flag);
    } else {
        // Detect from the reference column: constant, piecewise-constant
        // (step) or periodic.
        bool constant = true, piecewise = true;
        for (size_t i = 1; i < log.rows.size(); ++i) {
            if (log.rows[i].z_ref != log.rows[0].z_ref) constant = false;
            if (log.rows[i].z_ref < log.rows[i - 1].z_ref) piecewise = false;
        }
        traj.kind = constant ? hexctl::TrajectoryKind::Constant
                  : piecewise ? hexctl::TrajectoryKind::Step
                              : hexctl::TrajectoryKind::Sine;
    }
    double amp = 0.0;
    for (const auto& r : log.rows) amp = std::max(amp, std::abs(r.z_ref));
    traj.amplitude = amp > 0.0 ? amp : 1.0;

    const hexctl::Metrics m = hexctl::compute_metrics(log, traj);
    std::cout << "kind           " << to_string(traj.kind) << "\n";
    std::cout << "rmse           " << hexctl::format_double(m.rmse) << "\n";
    std::cout << "rise_time      " << hexctl::format_double(m.rise_time) << "\n";
    std::cout << "settling_time  " << hexctl::format_double(m.settling_time)
              << (m.settled ? "" : " (not settled)") << "\n";
    std::cout << "peak_overshoot " << hexctl::format_double(m.peak_overshoot) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hexacopter altitude-control simulation"};
    app.require_subcommand(1);

    std::string config_path, out_dir, controllers = "pid,g", trajectories, log_path, kind;

    auto* run = app.add_subcommand("run", "simulate one closed-loop run");
    run->add_option("--config", config_path, "config file (flat key = value)");
    run->add_option("--out", out_dir, "output directory (overrides config)");

    auto* cmp = app.add_subcommand("compare", "run several controllers on one trajectory");
    cmp->add_option("--config", config_path, "config file");
    cmp->add_option("--controllers", controllers, "comma list, e.g. pid,g");
    cmp->add_option("--trajectories", trajectories, "optional comma list of trajectory kinds");
    cmp->add_option("--out", out_dir, "directory for comparison.csv");

    auto* met = app.add_subcommand("metrics", "recompute metrics from a run.csv");
    met->add_option("--log", log_path, "run.csv produced by 'run'")->required();
    met->add_option("--kind", kind, "trajectory kind override");

    auto* pc = app.add_subcommand("print-config", "print the default config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed()) return do_run(config_path, out_dir);
        if (cmp->parsed()) return do_compare(config_path, controllers, trajectories, out_dir);
        if (met->parsed()) return do_metrics(log_path, kind);
        if (pc->parsed()) {
            std::cout << hexctl::default_config_text();
            return 0;
        }
    } catch (const hexctl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hexctl::NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
