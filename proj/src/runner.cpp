#include "rllforge/runner.hpp"

#include <cmath>
#include <sstream>

#include "rllforge/currents.hpp"
#include "rllforge/reps.hpp"
#include "rllforge/rll_verify.hpp"

namespace rllf {

namespace {

int count_or(const RunConfig& cfg, int dflt) {
  return cfg.has_samples ? cfg.samples : dflt;
}

bool same_params(const RParams& a, const RParams& b) {
  return a.eta == b.eta && a.hbar == b.hbar && a.member_n == b.member_n;
}

}  // namespace

std::vector<CheckReport> run_check_r(const RunConfig& cfg) {
  const StructuredR R = config_r(cfg);
  CheckReport uni = check_unitarity(R, cfg.sample_spec(count_or(cfg, 100)), cfg.tol);
  CheckReport ybe = check_ybe(R, cfg.sample_spec(count_or(cfg, 50)), cfg.tol);
  for (CheckReport* r : {&uni, &ybe}) {
    r->params["eta"] = cfg.eta;
    r->params["hbar"] = cfg.hbar;
  }
  return {uni, ybe};
}

std::vector<CheckReport> run_orbit(const RunConfig& cfg) {
  FamilyOrbit orb = config_orbit(cfg);
  std::vector<std::pair<std::string, StructuredR>> images;
  for (int n = orb.n_min(); n <= orb.n_max(); ++n) {
    std::ostringstream label;
    label << "member(" << n << ")";
    images.emplace_back(label.str(), orb.member(n));
  }
  CheckReport adm =
      check_images_admissible(images, cfg.sample_spec(count_or(cfg, 40)), cfg.tol);
  adm.check = "orbit-admissibility";

  CheckReport exact;
  exact.check = "orbit-exactness";
  exact.seed = cfg.seed;
  exact.tolerance = 0.0;  // bit-exact identities
  for (int n = orb.n_min(); n < orb.n_max(); ++n) {
    const StructuredR up = apply_rho(orb.rho(), +1, n, orb.member(n));
    const StructuredR back = apply_rho(orb.rho(), -1, n + 1, up);
    const double res_round =
        same_params(back.params, orb.member(n).params) ? 0.0 : 1.0;
    exact.record("roundtrip at " + std::to_string(n), res_round, 0.0);
    const double res_up = same_params(up.params, orb.member(n + 1).params) ? 0.0 : 1.0;
    exact.record("step vs member at " + std::to_string(n + 1), res_up, 0.0);
    exact.samples += 1;
  }
  for (int n = orb.n_min(); n + 2 <= orb.n_max(); ++n) {
    const ParamMap composed = compose(tau(orb, n + 2, n + 1), tau(orb, n + 1, n));
    const double res = composed == tau(orb, n + 2, n) ? 0.0 : 1.0;
    exact.record("tau composition at " + std::to_string(n), res, 0.0);
    exact.samples += 1;
  }
  exact.finalize();
  return {adm, exact};
}

std::vector<CheckReport> run_currents(const RunConfig& cfg) {
  const StructuredR R = config_r(cfg);
  CheckReport compat =
      check_psi_compatibility(R, cfg.sample_spec(count_or(cfg, 50)), cfg.tol);

  CheckReport values;
  values.check = "current-values";
  values.seed = cfg.seed;
  values.tolerance = cfg.tol;
  const StructureFunctionSet sf = structure_functions(R);
  values.params["N"] = sf.N;
  values.params["psi_e(1)"] = sf.psi_e(1.0);
  values.params["psi_f(1)"] = sf.psi_f(1.0);
  values.params["phi(1)"] = sf.phi(1.0);
  values.record("psi_e(1) psi_f(1) = 1",
                std::abs(sf.psi_e(1.0) * sf.psi_f(1.0) - 1.0), cfg.tol);
  values.samples = 1;
  values.finalize();
  return {compat, values};
}

std::vector<CheckReport> run_verify_rll(const RunConfig& cfg) {
  FamilyOrbit orb = config_orbit(cfg);
  VerifyOptions opt;
  opt.rules.corrupt_kk3 = cfg.fixtures.corrupt_kk3;
  CheckReport rep =
      verify_components(orb, cfg.pair_i, cfg.pair_j, cfg.eps,
                        cfg.sample_spec(count_or(cfg, 20)), cfg.tol, opt);
  return {rep};
}

std::vector<CheckReport> run_verify_ef(const RunConfig& cfg) {
  FamilyOrbit orb = config_orbit(cfg);
  EFOptions opt;
  opt.rules.corrupt_kk3 = cfg.fixtures.corrupt_kk3;
  opt.wrong_shift = cfg.fixtures.wrong_shift;
  std::vector<CheckReport> out;
  for (const cplx c : cfg.ef_charges) {
    CheckReport rep =
        verify_EF_relations(orb, cfg.pair_i, cfg.pair_j, cfg.eps, c,
                            cfg.sample_spec(count_or(cfg, 12)), cfg.tol, opt);
    std::ostringstream name;
    name << "ef-relations[c=" << c.real();
    if (c.imag() != 0.0) name << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
    name << "]";
    rep.check = name.str();
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<CheckReport> run_transfer(const RunConfig& cfg) {
  const StructuredR R = config_r(cfg);
  std::vector<CheckReport> out;
  for (int len = 1; len <= cfg.chain_max; ++len) {
    Sampler smp(cfg.seed + static_cast<std::uint64_t>(len), cfg.box_lo, cfg.box_hi);
    std::vector<EvalL> chain;
    for (int k = 0; k < len; ++k) chain.push_back(eval_L(R, smp.point(), k));
    auto T = [chain](cplx u) { return trace_transfer(chain, u).value; };
    CheckReport rep =
        check_commuting(T, cfg.sample_spec(count_or(cfg, 10)), cfg.tol);
    rep.check = "transfer-chain-" + std::to_string(len);
    rep.params["hbar"] = cfg.hbar;
    for (int k = 0; k < len; ++k)
      rep.params["w" + std::to_string(k)] = chain[static_cast<std::size_t>(k)]
                                                .inhomogeneity;
    out.push_back(std::move(rep));
  }
  if (cfg.fixtures.naive_xy) {
    // Negative control: two distinct orbit members chained with covector /
    // vector data that satisfies no exchange relation.
    RhoSpec rho;
    rho.kind = RhoKind::PhaseShift;
    rho.shift.def = cplx(0.3);
    rho.charge.def = cplx(1.0);
    FamilyOrbit orb = orbit(R, rho, -1, 2);
    std::vector<EvalL> chain{eval_L(orb.member(0), 0.0, 0, false),
                             eval_L(orb.member(1), 0.0, 1, false)};
    std::vector<MatX> Y{MatX::Ones(1, 1), MatX::Zero(1, 1)};
    std::vector<MatX> X{MatX::Ones(1, 1), MatX::Zero(1, 1)};
    TransferChain tc(Y, chain, X);
    auto T = [tc](cplx u) { return transfer(tc, u); };
    CheckReport rep =
        check_commuting(T, cfg.sample_spec(count_or(cfg, 10)), cfg.tol);
    rep.check = "transfer-naive-xy";
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<CheckReport> run_command(const std::string& command,
                                     const RunConfig& cfg) {
  if (command == "check-r") return run_check_r(cfg);
  if (command == "orbit") return run_orbit(cfg);
  if (command == "currents") return run_currents(cfg);
  if (command == "verify-rll") return run_verify_rll(cfg);
  if (command == "verify-ef") return run_verify_ef(cfg);
  if (command == "transfer") return run_transfer(cfg);
  throw std::invalid_argument("unknown command '" + command + "'");
}

}  // namespace rllf
