#include "hexctl/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hexctl {

void RunConfig::validate() const {
    plant.validate();
    trajectory.validate();
    pid.validate();
    gctrl.evolution.validate();
    if (controller != "g" && controller != "pid")
        throw ConfigError("controller must be 'g' or 'pid', got '" + controller + "'");
    if (!(duration >= 0.0)) throw ConfigError("duration must be >= 0");
    if (is_periodic(trajectory.kind) && duration > 0.0 &&
        duration < 1.0 / trajectory.frequency)
        throw ConfigError("duration must cover at least one full reference period");
}

namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("config: key '" + key + "' has non-numeric value '" + value + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config: key '" + key + "' expects true/false, got '" + value + "'");
}

}  // namespace

RunConfig parse_run_config(std::istream& is) {
    RunConfig cfg;
    std::string pid_ff = "0";
    std::string g_ff = "0";

    std::string raw;
    int lineno = 0;
    while (std::getline(is, raw)) {
        ++lineno;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");

        auto num = [&] { return to_double(key, value); };

        if (key == "mass") cfg.plant.inertia.mass = num();
        else if (key == "inertia_xx") cfg.plant.inertia.ixx = num();
        else if (key == "inertia_yy") cfg.plant.inertia.iyy = num();
        else if (key == "inertia_zz") cfg.plant.inertia.izz = num();
        else if (key == "inertia_xz") cfg.plant.inertia.ixz = num();
        else if (key == "gravity") cfg.plant.inertia.gravity = num();
        else if (key == "air_density") cfg.plant.rotor.air_density = num();
        else if (key == "blade_radius") cfg.plant.rotor.blade_radius = num();
        else if (key == "lift_slope") cfg.plant.rotor.lift_slope = num();
        else if (key == "solidity") cfg.plant.rotor.solidity = num();
        else if (key == "profile_drag") cfg.plant.rotor.profile_drag = num();
        else if (key == "induced_correction") cfg.plant.rotor.induced_correction = num();
        else if (key == "forward_correction") cfg.plant.rotor.forward_correction = num();
        else if (key == "rotor_speed") cfg.plant.rotor_speed = num();
        else if (key == "arm_length") cfg.plant.arm_length = num();
        else if (key == "dt") cfg.plant.dt = num();
        else if (key == "pitch_min") cfg.plant.pitch_min = num();
        else if (key == "pitch_max") cfg.plant.pitch_max = num();
        else if (key == "sensor_noise_std") cfg.plant.sensor_noise_std = num();
        else if (key == "duration") cfg.duration = num();
        else if (key == "seed") cfg.seed = static_cast<unsigned long>(num());
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "controller") cfg.controller = value;
        else if (key == "trajectory") cfg.trajectory.kind = trajectory_kind_from_string(value);
        else if (key == "amplitude") cfg.trajectory.amplitude = num();
        else if (key == "frequency") cfg.trajectory.frequency = num();
        else if (key == "step_time") cfg.trajectory.step_time = num();
        else if (key == "att_roll_kp") cfg.attitude.roll_kp = num();
        else if (key == "att_roll_kd") cfg.attitude.roll_kd = num();
        else if (key == "att_pitch_kp") cfg.attitude.pitch_kp = num();
        else if (key == "att_pitch_kd") cfg.attitude.pitch_kd = num();
        else if (key == "att_yaw_kp") cfg.attitude.yaw_kp = num();
        else if (key == "att_yaw_kd") cfg.attitude.yaw_kd = num();
        else if (key == "pid_kp") cfg.pid.kp = num();
        else if (key == "pid_ki") cfg.pid.ki = num();
        else if (key == "pid_kd") cfg.pid.kd = num();
        else if (key == "pid_integrator_limit") cfg.pid.integrator_limit = num();
        else if (key == "pid_deriv_tau") cfg.pid.deriv_tau = num();
        else if (key == "pid_feedforward") pid_ff = value;
        else if (key == "g_growth_threshold") cfg.gctrl.evolution.growth_threshold = num();
        else if (key == "g_prune_delta") cfg.gctrl.evolution.prune_delta = num();
        else if (key == "g_winner_rate") cfg.gctrl.evolution.winner_rate = num();
        else if (key == "g_logdet_clip") cfg.gctrl.evolution.logdet_clip = num();
        else if (key == "g_overlap_factor") cfg.gctrl.evolution.overlap_factor = num();
        else if (key == "g_first_rule_width") cfg.gctrl.evolution.first_rule_width = num();
        else if (key == "g_min_width") cfg.gctrl.evolution.min_width = num();
        else if (key == "g_firing_window")
            cfg.gctrl.evolution.firing_window = static_cast<int>(num());
        else if (key == "g_eta_volume_only") cfg.gctrl.evolution.eta_volume_only = to_bool(key, value);
        else if (key == "g_det_exponent_inverse")
            cfg.gctrl.evolution.det_exponent_inverse = to_bool(key, value);
        else if (key == "g_gamma1") cfg.gctrl.sliding.gamma1 = num();
        else if (key == "g_gamma2") cfg.gctrl.sliding.gamma2 = num();
        else if (key == "g_gamma3") cfg.gctrl.sliding.gamma3 = num();
        else if (key == "g_alpha1_init") cfg.gctrl.sliding.alpha1 = num();
        else if (key == "g_alpha2_init") cfg.gctrl.sliding.alpha2 = num();
        else if (key == "g_alpha3_init") cfg.gctrl.sliding.alpha3 = num();
        else if (key == "g_alpha_floor") cfg.gctrl.sliding.alpha_floor = num();
        else if (key == "g_alpha1_ceiling") cfg.gctrl.sliding.alpha1_ceiling = num();
        else if (key == "g_alpha2_ceiling") cfg.gctrl.sliding.alpha2_ceiling = num();
        else if (key == "g_alpha3_ceiling") cfg.gctrl.sliding.alpha3_ceiling = num();
        else if (key == "g_init_gain") cfg.gctrl.sliding.init_gain = num();
        else if (key == "g_robust_gain") cfg.gctrl.sliding.robust_gain = num();
        else if (key == "g_boundary_layer") cfg.gctrl.sliding.boundary_layer = num();
        else if (key == "g_input_gain_error") cfg.gctrl.input_gain_error = num();
        else if (key == "g_input_gain_error_rate") cfg.gctrl.input_gain_error_rate = num();
        else if (key == "g_output_gain") cfg.gctrl.output_gain = num();
        else if (key == "g_feedforward") g_ff = value;
        else if (key == "g_deriv_tau") cfg.gctrl.deriv_tau = num();
        else if (key == "g_integral_gate") cfg.gctrl.integral_gate = num();
        else if (key == "g_integral_limit") cfg.gctrl.integral_limit = num();
        else throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" +
                               key + "'");
    }

    // Derived rotor areas are never read from the file.
    cfg.plant.rotor.disc_area = kPi * cfg.plant.rotor.blade_radius * cfg.plant.rotor.blade_radius;
    cfg.plant.rotor.blade_area = cfg.plant.rotor.solidity * cfg.plant.rotor.disc_area;

    // Controllers command collective pitch, so their output range is the
    // actuator range.
    cfg.pid.output_min = cfg.plant.pitch_min;
    cfg.pid.output_max = cfg.plant.pitch_max;
    cfg.gctrl.output_min = cfg.plant.pitch_min;
    cfg.gctrl.output_max = cfg.plant.pitch_max;

    auto resolve_ff = [&](const std::string& text, const char* key) {
        if (text == "auto") return hover_trim_pitch(cfg.plant);
        return to_double(key, text);
    };
    cfg.pid.feedforward = resolve_ff(pid_ff, "pid_feedforward");
    cfg.gctrl.feedforward = resolve_ff(g_ff, "g_feedforward");

    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    return parse_run_config(is);
}

std::string default_config_text() {
    const RunConfig d;
    std::ostringstream os;
    auto put = [&](const char* key, double v, const char* comment) {
        char line[128];
        std::snprintf(line, sizeof line, "%-24s = %-12g # %s\n", key, v, comment);
        os << line;
    };
    os << "# hexctl run configuration (flat key = value; '#' starts a comment)\n\n";
    os << "# --- vehicle inertia ---\n";
    put("mass", d.plant.inertia.mass, "kg");
    put("inertia_xx", d.plant.inertia.ixx, "kg m^2");
    put("inertia_yy", d.plant.inertia.iyy, "kg m^2");
    put("inertia_zz", d.plant.inertia.izz, "kg m^2");
    put("inertia_xz", d.plant.inertia.ixz, "kg m^2");
    put("gravity", d.plant.inertia.gravity, "m/s^2");
    os << "\n# --- rotor aerodynamics (disc/blade areas derive from radius and solidity) ---\n";
    put("air_density", d.plant.rotor.air_density, "kg/m^3");
    put("blade_radius", d.plant.rotor.blade_radius, "m");
    put("rotor_speed", d.plant.rotor_speed, "rad/s, fixed; rotors are pitch-controlled");
    put("lift_slope", d.plant.rotor.lift_slope, "1/rad");
    put("solidity", d.plant.rotor.solidity, "-");
    put("profile_drag", d.plant.rotor.profile_drag, "C_D0");
    put("induced_correction", d.plant.rotor.induced_correction, "k_ind");
    put("forward_correction", d.plant.rotor.forward_correction, "kappa");
    put("arm_length", d.plant.arm_length, "m, regular hexagon");
    put("pitch_min", d.plant.pitch_min, "rad, collective actuator limit");
    put("pitch_max", d.plant.pitch_max, "rad");
    os << "\n# --- run ---\n";
    put("dt", d.plant.dt, "s");
    put("duration", d.duration, "s");
    put("seed", static_cast<double>(d.seed), "sensor-noise stream");
    put("sensor_noise_std", d.plant.sensor_noise_std, "m, additive on measured altitude");
    os << "out_dir                  = out\n";
    os << "controller               = g            # g | pid\n";
    os << "\n# --- reference trajectory ---\n";
    os << "trajectory               = constant     # constant|step|sine|triangle|sawtooth\n";
    put("amplitude", d.trajectory.amplitude, "m");
    put("frequency", d.trajectory.frequency, "Hz, periodic kinds");
    put("step_time", d.trajectory.step_time, "s, second riser of the step reference");
    os << "\n# --- inner attitude-hold loop (shared by both controllers) ---\n";
    put("att_roll_kp", d.attitude.roll_kp, "rad collective per rad");
    put("att_roll_kd", d.attitude.roll_kd, "per rad/s");
    put("att_pitch_kp", d.attitude.pitch_kp, "");
    put("att_pitch_kd", d.attitude.pitch_kd, "");
    put("att_yaw_kp", d.attitude.yaw_kp, "");
    put("att_yaw_kd", d.attitude.yaw_kd, "");
    os << "\n# --- PID altitude baseline ---\n";
    put("pid_kp", d.pid.kp, "rad/m");
    put("pid_ki", d.pid.ki, "rad/(m s)");
    put("pid_kd", d.pid.kd, "rad/(m/s)");
    put("pid_integrator_limit", d.pid.integrator_limit, "m s");
    put("pid_deriv_tau", d.pid.deriv_tau, "s, derivative filter");
    os << "pid_feedforward          = auto         # rad, or 'auto' = hover trim\n";
    os << "\n# --- G-controller: structure learning ---\n";
    put("g_growth_threshold", d.gctrl.evolution.growth_threshold, "g");
    put("g_prune_delta", d.gctrl.evolution.prune_delta, "delta; prune cut = 0.1*delta");
    put("g_winner_rate", d.gctrl.evolution.winner_rate, "beta_w");
    put("g_logdet_clip", d.gctrl.evolution.logdet_clip, "max |dlogdet| per winner update");
    put("g_overlap_factor", d.gctrl.evolution.overlap_factor, "new-rule width factor");
    put("g_first_rule_width", d.gctrl.evolution.first_rule_width, "scaled input units");
    put("g_min_width", d.gctrl.evolution.min_width, "covariance eigenvalue floor (width)");
    put("g_firing_window", d.gctrl.evolution.firing_window, "samples");
    os << "g_eta_volume_only        = false        # true: prune on volume ratio alone\n";
    os << "g_det_exponent_inverse   = false        # true: det^(1/k) instead of det^k\n";
    os << "\n# --- G-controller: sliding-mode adaptation ---\n";
    put("g_gamma1", d.gctrl.sliding.gamma1, "alpha1 learning rate");
    put("g_gamma2", d.gctrl.sliding.gamma2, "alpha2 learning rate");
    put("g_gamma3", d.gctrl.sliding.gamma3, "alpha3 learning rate");
    put("g_alpha1_init", d.gctrl.sliding.alpha1, "");
    put("g_alpha2_init", d.gctrl.sliding.alpha2, "");
    put("g_alpha3_init", d.gctrl.sliding.alpha3, "");
    put("g_alpha_floor", d.gctrl.sliding.alpha_floor, "");
    put("g_alpha1_ceiling", d.gctrl.sliding.alpha1_ceiling, "");
    put("g_alpha2_ceiling", d.gctrl.sliding.alpha2_ceiling, "");
    put("g_alpha3_ceiling", d.gctrl.sliding.alpha3_ceiling, "");
    put("g_init_gain", d.gctrl.sliding.init_gain, "g0 per new rule block of G");
    put("g_robust_gain", d.gctrl.sliding.robust_gain, "k_r [rad]");
    put("g_boundary_layer", d.gctrl.sliding.boundary_layer, "phi_b");
    os << "\n# --- G-controller: interface ---\n";
    put("g_input_gain_error", d.gctrl.input_gain_error, "scale of e in the fuzzy input");
    put("g_input_gain_error_rate", d.gctrl.input_gain_error_rate, "scale of de/dt");
    put("g_output_gain", d.gctrl.output_gain, "rad per fuzzy output unit");
    os << "g_feedforward            = 0            # rad, or 'auto'; 0 = strict from-scratch\n";
    put("g_deriv_tau", d.gctrl.deriv_tau, "s, error-derivative filter");
    put("g_integral_gate", d.gctrl.integral_gate, "m, integrate only while |e| is below");
    put("g_integral_limit", d.gctrl.integral_limit, "m*s, clamp on the surface integral");
    return os.str();
}

}  // namespace hexctl
