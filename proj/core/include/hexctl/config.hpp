#pragma once

#include <iosfwd>
#include <string>

#include "hexctl/controllers.hpp"
#include "hexctl/plant.hpp"
#include "hexctl/trajectory.hpp"

namespace hexctl {

// Everything one closed-loop run needs.  The step size lives in the plant
// config; both controllers run at the same rate.
struct RunConfig {
    PlantConfig plant;
    AttitudeGains attitude;
    std::string controller = "g";  // "g" or "pid"
    PidGains pid;
    GControllerConfig gctrl;
    Trajectory trajectory;
    double duration = 60.0;  // [s]
    unsigned long seed = 1;  // sensor-noise stream
    std::string out_dir = "out";

    double dt() const { return plant.dt; }
    void validate() const;  // throws ConfigError
};

// Flat key = value file, '#' comments.  Unknown keys are configuration
// errors.  The keys pid_feedforward / g_feedforward also accept "auto",
// which resolves to the hover-trim collective of the configured plant.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(std::istream& is);

// The defaults shipped with the tool, as a parseable annotated config file.
std::string default_config_text();

}  // namespace hexctl
