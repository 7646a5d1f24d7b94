#include "rllforge/report.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

namespace rllf {

ordered_json json_complex(cplx z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json report_to_json(const CheckReport& rep) {
  ordered_json j;
  j["check"] = rep.check;
  j["status"] = rep.pass ? "pass" : "fail";
  j["max_residual"] = rep.max_residual;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["tolerance"] = rep.tolerance;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : rep.params) params[k] = json_complex(v);
  j["params"] = params;
  ordered_json fails = ordered_json::array();
  for (const auto& f : rep.failures) {
    ordered_json jf;
    jf["where"] = f.where;
    jf["residual"] = f.residual;
    fails.push_back(jf);
  }
  j["failures"] = fails;
  return j;
}

bool all_passed(const std::vector<CheckReport>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckReport& c) { return c.pass; });
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ordered_json run_to_json(const std::string& command,
                         std::vector<CheckReport> checks,
                         bool with_timestamp) {
  std::stable_sort(checks.begin(), checks.end(),
                   [](const CheckReport& a, const CheckReport& b) {
                     return a.check < b.check;
                   });
  ordered_json j;
  j["command"] = command;
  if (with_timestamp) j["timestamp"] = utc_now();
  j["status"] = all_passed(checks) ? "pass" : "fail";
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) arr.push_back(report_to_json(c));
  j["checks"] = arr;
  return j;
}

void write_json(const ordered_json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output path " + path);
  out << doc.dump(2) << "\n";
}

}  // namespace rllf
