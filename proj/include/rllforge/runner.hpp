#pragma once
// Command orchestration shared by the CLI and tests: each command maps a
// RunConfig to a list of CheckReports.

#include <string>
#include <vector>

#include "rllforge/config.hpp"
#include "rllforge/types.hpp"

namespace rllf {

std::vector<CheckReport> run_check_r(const RunConfig& cfg);
std::vector<CheckReport> run_orbit(const RunConfig& cfg);
std::vector<CheckReport> run_currents(const RunConfig& cfg);
std::vector<CheckReport> run_verify_rll(const RunConfig& cfg);
std::vector<CheckReport> run_verify_ef(const RunConfig& cfg);
std::vector<CheckReport> run_transfer(const RunConfig& cfg);

// Dispatch by command name; throws std::invalid_argument on unknown commands.
std::vector<CheckReport> run_command(const std::string& command,
                                     const RunConfig& cfg);

}  // namespace rllf
