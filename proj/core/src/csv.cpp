#include "hexctl/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

namespace hexctl {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_run_csv(std::ostream& os, const SimLog& log) {
    os << kRunCsvHeader << "\n";
    for (const auto& r : log.rows) {
        os << format_double(r.t) << ',' << format_double(r.z_ref) << ',' << format_double(r.z)
           << ',' << format_double(r.e) << ',' << format_double(r.u) << ',' << r.rule_count << ','
           << format_double(r.s) << ',' << format_double(r.alpha1) << ',' << format_double(r.roll)
           << ',' << format_double(r.pitch) << "\n";
    }
    if (log.aborted) os << "# aborted: " << log.abort_reason << "\n";
}

SimLog read_run_csv(std::istream& is) {
    SimLog log;
    std::string line;
    if (!std::getline(is, line)) throw ConfigError("run csv: empty file");
    if (line != kRunCsvHeader) throw ConfigError("run csv: unexpected header: " + line);

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            log.aborted = true;
            log.abort_reason = line;
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 10) throw ConfigError("run csv: malformed row: " + line);
        LogRow r;
        r.t = std::strtod(fields[0].c_str(), nullptr);
        r.z_ref = std::strtod(fields[1].c_str(), nullptr);
        r.z = std::strtod(fields[2].c_str(), nullptr);
        r.e = std::strtod(fields[3].c_str(), nullptr);
        r.u = std::strtod(fields[4].c_str(), nullptr);
        r.rule_count = std::atoi(fields[5].c_str());
        r.s = std::strtod(fields[6].c_str(), nullptr);
        r.alpha1 = std::strtod(fields[7].c_str(), nullptr);
        r.roll = std::strtod(fields[8].c_str(), nullptr);
        r.pitch = std::strtod(fields[9].c_str(), nullptr);
        log.rows.push_back(r);
    }
    return log;
}

void write_events_csv(std::ostream& os, const std::vector<EvolutionEvent>& events) {
    os << kEventsCsvHeader << "\n";
    for (const auto& e : events)
        os << format_double(e.t) << ',' << to_string(e.kind) << ',' << e.rule_index << ','
           << format_double(e.metric) << "\n";
}

void write_adaptation_csv(std::ostream& os, const std::vector<AdaptationSample>& samples) {
    os << kAdaptationCsvHeader << "\n";
    for (const auto& a : samples)
        os << format_double(a.t) << ',' << format_double(a.s) << ',' << format_double(a.alpha1)
           << ',' << format_double(a.alpha2) << ',' << format_double(a.alpha3) << ','
           << a.rule_count << ',' << format_double(a.gain_min_eigenvalue) << "\n";
}

}  // namespace hexctl
