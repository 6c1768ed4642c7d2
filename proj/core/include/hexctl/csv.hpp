#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hexctl/evolving.hpp"
#include "hexctl/log.hpp"

namespace hexctl {

// Doubles are serialized with 17 significant digits so parsing the file back
// reproduces them bit-exactly.
std::string format_double(double v);

void write_run_csv(std::ostream& os, const SimLog& log);
SimLog read_run_csv(std::istream& is);  // throws ConfigError on a malformed file

void write_events_csv(std::ostream& os, const std::vector<EvolutionEvent>& events);
void write_adaptation_csv(std::ostream& os, const std::vector<AdaptationSample>& samples);

inline constexpr const char* kRunCsvHeader = "t,z_ref,z,e,u,rule_count,s_h,alpha1,phi,theta";
inline constexpr const char* kEventsCsvHeader = "t,kind,rule_idx,metric";
inline constexpr const char* kAdaptationCsvHeader =
    "t,s_h,alpha1,alpha2,alpha3,rule_count,g_min_eig";

}  // namespace hexctl
