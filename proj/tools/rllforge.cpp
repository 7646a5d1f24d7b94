// rllforge: configure R-matrix families, run verification suites, emit
// reproducible JSON reports.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "rllforge/report.hpp"
#include "rllforge/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "rllforge: generalized RLL algebra checks (R-matrix families, current "
      "relations, transfer operators)"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool quiet = false;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "seed (overrides config and RLLFORGE_SEED)");
  app.add_option("--tol", tol, "residual tolerance (overrides config)");
  app.add_option("--out", out_path, "report output path");
  app.add_flag("--quiet", quiet, "suppress stdout report");

  app.add_subcommand("check-r", "unitarity and Yang-Baxter residuals");
  app.add_subcommand("orbit", "generate the orbit and check admissibility");
  app.add_subcommand("currents",
                     "structure functions, delta normalization, compatibility");
  app.add_subcommand("verify-rll", "reduce all exchange-relation components");
  app.add_subcommand("verify-ef", "reduce the diagonal-vs-current relations");
  app.add_subcommand("transfer", "transfer-operator commutator residuals");

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    rllf::RunConfig cfg;
    if (!config_path.empty()) cfg = rllf::load_config(config_path);
    rllf::resolve_seed(cfg, seed, std::getenv("RLLFORGE_SEED"));
    if (tol) {
      if (!(*tol > 0)) throw rllf::ValidationError("/tolerance", "must be positive");
      cfg.tol = *tol;
    }
    if (!out_path.empty()) cfg.out = out_path;
    if (quiet) cfg.quiet = true;

    const std::vector<rllf::CheckReport> checks = rllf::run_command(command, cfg);
    const rllf::ordered_json doc = rllf::run_to_json(command, checks);
    if (!cfg.out.empty()) rllf::write_json(doc, cfg.out);
    if (!cfg.quiet && cfg.out.empty()) rllf::write_json(doc, "-");
    return rllf::all_passed(checks) ? 0 : 1;
  } catch (const rllf::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
