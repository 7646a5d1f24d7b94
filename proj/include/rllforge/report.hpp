#pragma once
// JSON serialization of check reports. Complex numbers are encoded as
// two-element arrays [re, im]; the run timestamp is the only nondeterministic
// field in a report.

#include <json.hpp>
#include <string>
#include <vector>

#include "rllforge/types.hpp"

namespace rllf {

using ordered_json = nlohmann::ordered_json;

ordered_json json_complex(cplx z);

// Per-check object: check, status, max_residual, samples, seed, params,
// failures.
ordered_json report_to_json(const CheckReport& rep);

// Run envelope: command, timestamp, checks sorted by check name, overall
// status, exit code semantics (0 iff all pass).
ordered_json run_to_json(const std::string& command,
                         std::vector<CheckReport> checks,
                         bool with_timestamp = true);

bool all_passed(const std::vector<CheckReport>& checks);

// Serialize with a trailing newline; path "-" or empty writes to stdout.
void write_json(const ordered_json& doc, const std::string& path);

}  // namespace rllf
