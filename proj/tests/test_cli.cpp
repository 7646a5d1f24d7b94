#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
  int code = -1;
  std::string out, err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "rllforge_cli_test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Runs the CLI with RLLFORGE_SEED scrubbed unless an explicit env prefix is
// given (e.g. "env RLLFORGE_SEED=1234").
CliResult run_cli(const std::string& args,
                  const std::string& env_prefix = "env -u RLLFORGE_SEED") {
  static int counter = 0;
  const fs::path so = work_dir() / ("out" + std::to_string(counter) + ".txt");
  const fs::path se = work_dir() / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env_prefix + " \"" + RLLFORGE_CLI_PATH + "\" " + args +
                          " > " + so.string() + " 2> " + se.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(so);
  r.err = slurp(se);
  return r;
}

fs::path write_config(const std::string& name, const json& j) {
  const fs::path p = work_dir() / name;
  std::ofstream out(p);
  out << j.dump(2) << "\n";
  return p;
}

std::string strip_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out << line << "\n";
  return out.str();
}

json phase_shift_cfg(int samples) {
  json cfg;
  cfg["samples"] = samples;
  cfg["rho"] = {{"kind", "phase_shift"}, {"shift", 0.1}};
  cfg["pair"] = {0, 1};
  return cfg;
}

}  // namespace

TEST_CASE("check-r passes with defaults and reports sorted checks") {
  fs::path cfg = write_config("base.json", json{{"samples", 20}});
  CliResult r = run_cli("check-r --config " + cfg.string() + " --seed 7");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["command"] == "check-r");
  CHECK(doc["status"] == "pass");
  CHECK(doc.contains("timestamp"));
  REQUIRE(doc["checks"].is_array());
  REQUIRE(doc["checks"].size() >= 2);
  std::string prev;
  for (const auto& c : doc["checks"]) {
    CHECK(c["status"] == "pass");
    CHECK(c["seed"] == 7);
    CHECK(c["failures"].is_array());
    std::string name = c["check"].get<std::string>();
    CHECK(prev <= name);  // sorted by check name
    prev = name;
    // complex parameters serialize as [re, im]
    for (const auto& [key, val] : c["params"].items()) {
      (void)key;
      CHECK(val.is_array());
      CHECK(val.size() == 2);
    }
  }
}

TEST_CASE("corrupted fixture yields exit 1 and recorded failures") {
  json cfg = phase_shift_cfg(2);
  cfg["fixtures"] = {{"corrupt_kk3", true}};
  fs::path p = write_config("corrupt.json", cfg);
  CliResult r = run_cli("verify-rll --config " + p.string() + " --seed 5");
  CHECK(r.code == 1);
  json doc = json::parse(r.out);
  CHECK(doc["status"] == "fail");
  bool some_failures = false;
  for (const auto& c : doc["checks"])
    if (!c["failures"].empty()) some_failures = true;
  CHECK(some_failures);
}

TEST_CASE("seed is required and resolution order is flag, config, env") {
  fs::path noseed = write_config("noseed.json", json{{"samples", 5}});
  SUBCASE("missing everywhere is a config error") {
    CliResult r = run_cli("check-r --config " + noseed.string());
    CHECK(r.code == 2);
    CHECK(r.err.find("/seed") != std::string::npos);
  }
  SUBCASE("environment provides the lowest-priority seed") {
    CliResult r = run_cli("check-r --config " + noseed.string(),
                          "env RLLFORGE_SEED=1234");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["checks"][0]["seed"] == 1234);
  }
  SUBCASE("config seed beats the environment") {
    fs::path withseed =
        write_config("withseed.json", json{{"samples", 5}, {"seed", 55}});
    CliResult r = run_cli("check-r --config " + withseed.string(),
                          "env RLLFORGE_SEED=1234");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["checks"][0]["seed"] == 55);
  }
  SUBCASE("flag beats the config") {
    fs::path withseed =
        write_config("withseed2.json", json{{"samples", 5}, {"seed", 55}});
    CliResult r =
        run_cli("check-r --config " + withseed.string() + " --seed 9");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["checks"][0]["seed"] == 9);
  }
}

TEST_CASE("reports are deterministic up to the timestamp") {
  fs::path cfg = write_config("det.json", phase_shift_cfg(2));
  fs::path o1 = work_dir() / "det1.json";
  fs::path o2 = work_dir() / "det2.json";
  CliResult r1 = run_cli("verify-rll --config " + cfg.string() +
                         " --seed 17 --out " + o1.string());
  CliResult r2 = run_cli("verify-rll --config " + cfg.string() +
                         " --seed 17 --out " + o2.string());
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(r1.out.empty());  // --out suppresses the stdout copy
  std::string a = slurp(o1), b = slurp(o2);
  REQUIRE_FALSE(a.empty());
  CHECK(strip_timestamp(a) == strip_timestamp(b));
  // different seed changes the sampled content
  fs::path o3 = work_dir() / "det3.json";
  run_cli("verify-rll --config " + cfg.string() + " --seed 18 --out " +
          o3.string());
  CHECK(strip_timestamp(a) != strip_timestamp(slurp(o3)));
}

TEST_CASE("quiet flag suppresses stdout but keeps the exit code") {
  fs::path cfg = write_config("quiet.json", json{{"samples", 5}});
  CliResult r = run_cli("check-r --config " + cfg.string() + " --seed 3 --quiet");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("config validation failures name the offending pointer") {
  SUBCASE("eps") {
    fs::path p = write_config("bad_eps.json", json{{"eps", 2}});
    CliResult r = run_cli("check-r --config " + p.string() + " --seed 1");
    CHECK(r.code == 2);
    CHECK(r.err.find("/eps") != std::string::npos);
  }
  SUBCASE("family builtin") {
    fs::path p = write_config(
        "bad_family.json", json{{"family", {{"builtin", "elliptic"}}}});
    CliResult r = run_cli("check-r --config " + p.string() + " --seed 1");
    CHECK(r.code == 2);
    CHECK(r.err.find("/family/builtin") != std::string::npos);
  }
  SUBCASE("box ordering") {
    fs::path p = write_config("bad_box.json", json{{"box", {2.0, -2.0}}});
    CliResult r = run_cli("check-r --config " + p.string() + " --seed 1");
    CHECK(r.code == 2);
    CHECK(r.err.find("/box") != std::string::npos);
  }
  SUBCASE("malformed json") {
    fs::path p = work_dir() / "broken.json";
    std::ofstream(p) << "{ not json";
    CliResult r = run_cli("check-r --config " + p.string() + " --seed 1");
    CHECK(r.code == 2);
  }
  SUBCASE("missing subcommand") {
    CliResult r = run_cli("");
    CHECK(r.code != 0);
  }
}

TEST_CASE("inline rational entry tables drive the same checks") {
  json table;
  table["a"] = {{"num", {1.0}}, {"den", {1.0}}};
  table["d"] = {{"num", {1.0}}, {"den", {1.0}}};
  table["b"] = {{"num", {0.0, 1.0}}, {"den", {0.3, 1.0}}};
  table["c"] = {{"num", {0.0, 1.0}}, {"den", {0.3, 1.0}}};
  table["s"] = {{"num", {0.3}}, {"den", {0.3, 1.0}}};
  table["t"] = {{"num", {0.3}}, {"den", {0.3, 1.0}}};
  json cfg;
  cfg["family"] = {{"inline_rational", table}, {"hbar", 0.3}};
  cfg["samples"] = 15;
  fs::path p = write_config("inline.json", cfg);
  CliResult r = run_cli("check-r --config " + p.string() + " --seed 11");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["status"] == "pass");
  // an incomplete table is rejected with the entry pointer
  json missing = cfg;
  missing["family"]["inline_rational"].erase("t");
  fs::path q = write_config("inline_missing.json", missing);
  CliResult bad = run_cli("check-r --config " + q.string() + " --seed 11");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("inline_rational/t") != std::string::npos);
}

TEST_CASE("remaining commands run end to end") {
  SUBCASE("orbit") {
    json cfg;
    cfg["samples"] = 5;
    cfg["rho"] = {{"kind", "phase_shift"}, {"shift", 0.1}};
    cfg["orbit_range"] = {-2, 2};
    fs::path p = write_config("orbit.json", cfg);
    CliResult r = run_cli("orbit --config " + p.string() + " --seed 21");
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["command"] == "orbit");
    CHECK(doc["status"] == "pass");
  }
  SUBCASE("currents") {
    fs::path p = write_config("cur.json", json{{"samples", 10}});
    CliResult r = run_cli("currents --config " + p.string() + " --seed 23");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["status"] == "pass");
  }
  SUBCASE("verify-ef") {
    json cfg = phase_shift_cfg(2);
    cfg["ef_charges"] = {0.0, 1.0};
    fs::path p = write_config("ef.json", cfg);
    CliResult r = run_cli("verify-ef --config " + p.string() + " --seed 29");
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["status"] == "pass");
    CHECK(doc["checks"].size() == 2);  // one per charge value
  }
  SUBCASE("transfer") {
    json cfg;
    cfg["samples"] = 4;
    cfg["chain_lengths"] = 2;
    fs::path p = write_config("tr.json", cfg);
    CliResult r = run_cli("transfer --config " + p.string() + " --seed 31");
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["status"] == "pass");
  }
  SUBCASE("transfer naive boundary fixture fails") {
    json cfg;
    cfg["samples"] = 4;
    cfg["chain_lengths"] = 2;
    cfg["fixtures"] = {{"naive_xy", true}};
    fs::path p = write_config("tr_naive.json", cfg);
    CliResult r = run_cli("transfer --config " + p.string() + " --seed 31");
    CHECK(r.code == 1);
    CHECK(json::parse(r.out)["status"] == "fail");
  }
}
