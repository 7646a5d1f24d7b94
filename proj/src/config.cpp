#include "rllforge/config.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>

#include "rllforge/types.hpp"

namespace rllf {

namespace {

using nlohmann::json;

cplx parse_cplx(const json& j, const std::string& ptr) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw ValidationError(ptr, "expected a number or [re, im] pair");
}

double parse_real(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw ValidationError(ptr, "expected a number");
  return j.get<double>();
}

int parse_int(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) throw ValidationError(ptr, "expected an integer");
  return j.get<int>();
}

IndexedValue parse_indexed(const json& j, const std::string& ptr) {
  IndexedValue v;
  if (j.is_object()) {
    if (j.contains("default")) v.def = parse_cplx(j["default"], ptr + "/default");
    if (j.contains("at")) {
      if (!j["at"].is_object())
        throw ValidationError(ptr + "/at", "expected an object of index -> value");
      for (const auto& [k, val] : j["at"].items()) {
        try {
          v.at[std::stoi(k)] = parse_cplx(val, ptr + "/at/" + k);
        } catch (const std::invalid_argument&) {
          throw ValidationError(ptr + "/at/" + k, "index keys must be integers");
        }
      }
    }
    return v;
  }
  v.def = parse_cplx(j, ptr);
  return v;
}

RhoKind parse_rho_kind(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw ValidationError(ptr, "expected a string");
  const std::string s = j.get<std::string>();
  if (s == "identity") return RhoKind::Identity;
  if (s == "phase_shift") return RhoKind::PhaseShift;
  if (s == "period_recursion") return RhoKind::PeriodRecursion;
  if (s == "period_replace") return RhoKind::PeriodReplace;
  throw ValidationError(ptr, "unknown rho kind '" + s + "'");
}

RatFn parse_ratfn(const json& j, const std::string& ptr) {
  RatFn f;
  if (!j.is_object() || !j.contains("num") || !j.contains("den"))
    throw ValidationError(ptr, "expected {num: [...], den: [...]}");
  auto coeffs = [&](const json& arr, const std::string& p) {
    if (!arr.is_array() || arr.empty())
      throw ValidationError(p, "expected a non-empty coefficient array");
    std::vector<cplx> out;
    for (std::size_t k = 0; k < arr.size(); ++k)
      out.push_back(parse_cplx(arr[k], p + "/" + std::to_string(k)));
    return out;
  };
  f.num = coeffs(j["num"], ptr + "/num");
  f.den = coeffs(j["den"], ptr + "/den");
  return f;
}

}  // namespace

RunConfig parse_config(const nlohmann::json& j) {
  RunConfig cfg;
  if (!j.is_object()) throw ValidationError("", "config must be a JSON object");

  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0)
      throw ValidationError("/seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.has_seed = true;
  }
  if (j.contains("samples")) {
    cfg.samples = parse_int(j["samples"], "/samples");
    if (cfg.samples <= 0)
      throw ValidationError("/samples", "sample count must be positive");
    cfg.has_samples = true;
  }
  if (j.contains("tolerance")) {
    cfg.tol = parse_real(j["tolerance"], "/tolerance");
    if (!(cfg.tol > 0)) throw ValidationError("/tolerance", "must be positive");
  }
  if (j.contains("pole_guard")) {
    cfg.pole_guard = parse_real(j["pole_guard"], "/pole_guard");
    if (!(cfg.pole_guard > 0))
      throw ValidationError("/pole_guard", "must be positive");
  }
  if (j.contains("box")) {
    const auto& b = j["box"];
    if (!b.is_array() || b.size() != 2)
      throw ValidationError("/box", "expected [lo, hi]");
    cfg.box_lo = parse_real(b[0], "/box/0");
    cfg.box_hi = parse_real(b[1], "/box/1");
    if (!(cfg.box_lo < cfg.box_hi))
      throw ValidationError("/box", "lo must be below hi");
  }

  if (j.contains("family")) {
    const auto& f = j["family"];
    if (!f.is_object()) throw ValidationError("/family", "expected an object");
    if (f.contains("hbar")) cfg.hbar = parse_cplx(f["hbar"], "/family/hbar");
    if (f.contains("eta")) cfg.eta = parse_cplx(f["eta"], "/family/eta");
    if (f.contains("inline_rational")) {
      cfg.family_builtin = "inline";
      const auto& tbl = f["inline_rational"];
      if (!tbl.is_object())
        throw ValidationError("/family/inline_rational", "expected an object");
      for (char w : {'a', 'b', 'c', 'd', 's', 't'}) {
        const std::string key(1, w);
        if (!tbl.contains(key))
          throw ValidationError("/family/inline_rational/" + key,
                                "entry table requires all of a,b,c,d,s,t");
        cfg.inline_spec.entries[w] =
            parse_ratfn(tbl[key], "/family/inline_rational/" + key);
      }
    } else if (f.contains("builtin")) {
      if (!f["builtin"].is_string())
        throw ValidationError("/family/builtin", "expected a string");
      cfg.family_builtin = f["builtin"].get<std::string>();
      if (cfg.family_builtin != "trig" && cfg.family_builtin != "rational")
        throw ValidationError("/family/builtin",
                              "unknown builtin '" + cfg.family_builtin + "'");
    } else {
      throw ValidationError("/family",
                            "expected 'builtin' or 'inline_rational'");
    }
    if (cfg.family_builtin == "trig" && cfg.eta == cplx(0.0))
      throw ValidationError("/family/eta", "must be nonzero for trig entries");
    if (cfg.hbar == cplx(0.0))
      throw ValidationError("/family/hbar", "must be nonzero");
  }

  if (j.contains("rho")) {
    const auto& r = j["rho"];
    if (!r.is_object()) throw ValidationError("/rho", "expected an object");
    if (r.contains("kind")) cfg.rho.kind = parse_rho_kind(r["kind"], "/rho/kind");
    if (r.contains("charge"))
      cfg.rho.charge = parse_indexed(r["charge"], "/rho/charge");
    if (r.contains("shift"))
      cfg.rho.shift = parse_indexed(r["shift"], "/rho/shift");
    if (r.contains("eta_table")) {
      if (!r["eta_table"].is_object())
        throw ValidationError("/rho/eta_table", "expected an object");
      for (const auto& [k, val] : r["eta_table"].items()) {
        try {
          cfg.rho.eta_table[std::stoi(k)] =
              parse_cplx(val, "/rho/eta_table/" + k);
        } catch (const std::invalid_argument&) {
          throw ValidationError("/rho/eta_table/" + k,
                                "index keys must be integers");
        }
      }
    }
    if (r.contains("override")) {
      if (!r["override"].is_object())
        throw ValidationError("/rho/override", "expected an object");
      for (const auto& [k, val] : r["override"].items()) {
        try {
          cfg.rho.override_kind[std::stoi(k)] =
              parse_rho_kind(val, "/rho/override/" + k);
        } catch (const std::invalid_argument&) {
          throw ValidationError("/rho/override/" + k,
                                "index keys must be integers");
        }
      }
    }
  }

  if (j.contains("orbit_range")) {
    const auto& r = j["orbit_range"];
    if (!r.is_array() || r.size() != 2)
      throw ValidationError("/orbit_range", "expected [min, max]");
    cfg.orbit_min = parse_int(r[0], "/orbit_range/0");
    cfg.orbit_max = parse_int(r[1], "/orbit_range/1");
    if (cfg.orbit_min > 0 || cfg.orbit_max < 0)
      throw ValidationError("/orbit_range", "range must contain 0");
  }
  if (j.contains("pair")) {
    const auto& p = j["pair"];
    if (!p.is_array() || p.size() != 2)
      throw ValidationError("/pair", "expected [i, j]");
    cfg.pair_i = parse_int(p[0], "/pair/0");
    cfg.pair_j = parse_int(p[1], "/pair/1");
    for (int v : {cfg.pair_i, cfg.pair_j})
      if (v < cfg.orbit_min || v > cfg.orbit_max)
        throw ValidationError("/pair", "indices must lie in orbit_range");
  }
  if (j.contains("eps")) {
    cfg.eps = parse_int(j["eps"], "/eps");
    if (cfg.eps != 1 && cfg.eps != -1)
      throw ValidationError("/eps", "must be +1 or -1");
  }
  if (j.contains("ef_charges")) {
    const auto& a = j["ef_charges"];
    if (!a.is_array() || a.empty())
      throw ValidationError("/ef_charges", "expected a non-empty array");
    cfg.ef_charges.clear();
    for (std::size_t k = 0; k < a.size(); ++k)
      cfg.ef_charges.push_back(
          parse_cplx(a[k], "/ef_charges/" + std::to_string(k)));
  }
  if (j.contains("chain_lengths")) {
    cfg.chain_max = parse_int(j["chain_lengths"], "/chain_lengths");
    if (cfg.chain_max < 1 || cfg.chain_max > 6)
      throw ValidationError("/chain_lengths", "must lie in [1, 6]");
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) throw ValidationError("/out", "expected a string");
    cfg.out = j["out"].get<std::string>();
  }
  if (j.contains("fixtures")) {
    const auto& f = j["fixtures"];
    if (!f.is_object()) throw ValidationError("/fixtures", "expected an object");
    auto flag = [&](const char* name) {
      if (!f.contains(name)) return false;
      if (!f[name].is_boolean())
        throw ValidationError(std::string("/fixtures/") + name,
                              "expected a boolean");
      return f[name].get<bool>();
    };
    cfg.fixtures.corrupt_kk3 = flag("corrupt_kk3");
    cfg.fixtures.wrong_shift = flag("wrong_shift");
    cfg.fixtures.naive_xy = flag("naive_xy");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("", std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

void resolve_seed(RunConfig& cfg, std::optional<std::uint64_t> cli_seed,
                  const char* env_value) {
  if (cli_seed) {
    cfg.seed = *cli_seed;
    cfg.has_seed = true;
    return;
  }
  if (cfg.has_seed) return;
  if (env_value && *env_value) {
    try {
      cfg.seed = std::stoull(env_value);
      cfg.has_seed = true;
      return;
    } catch (const std::exception&) {
      throw ValidationError("/seed", "RLLFORGE_SEED is not an integer");
    }
  }
  throw ValidationError(
      "/seed", "seed is required (--seed flag, config seed, or RLLFORGE_SEED)");
}

namespace {

cplx horner(const std::vector<cplx>& c, cplx u) {
  cplx acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
  return acc;
}

std::vector<cplx> poly_roots(std::vector<cplx> c) {
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  const int deg = static_cast<int>(c.size()) - 1;
  if (deg < 1) return {};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (int k = 0; k < deg; ++k) {
    if (k + 1 < deg) comp(k + 1, k) = 1.0;
    comp(k, deg - 1) = -c[static_cast<std::size_t>(k)] / c.back();
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    roots.push_back(es.eigenvalues()(k));
  return roots;
}

}  // namespace

StructuredR make_inline_rational(const InlineRationalSpec& spec, cplx hbar) {
  StructuredR R;
  R.kind = RKind::Custom;
  R.name = "inline_rational";
  R.params.hbar = hbar;
  R.params.hbar0 = hbar;
  std::vector<cplx> all_roots;
  for (const auto& [w, fn] : spec.entries) {
    for (const cplx r : poly_roots(fn.den)) all_roots.push_back(r);
    EntryFn f = [fn](cplx u) { return horner(fn.num, u) / horner(fn.den, u); };
    switch (w) {
      case 'a': R.a = f; break;
      case 'b': R.b = f; break;
      case 'c': R.c = f; break;
      case 'd': R.d = f; break;
      case 's': R.s = f; break;
      case 't': R.t = f; break;
      default: throw std::invalid_argument("unknown entry letter");
    }
  }
  for (char w : {'a', 'b', 'c', 'd', 's', 't'})
    if (!spec.entries.count(w))
      throw MissingParameterError(std::string("inline table lacks entry ") + w);
  R.pole_distance = [all_roots](cplx u) {
    double d = 1e30;
    for (const cplx r : all_roots) d = std::min(d, std::abs(u - r));
    return d;
  };
  return R;
}

StructuredR config_r(const RunConfig& cfg) {
  if (cfg.family_builtin == "trig") return builtin_trig(cfg.eta, cfg.hbar);
  if (cfg.family_builtin == "rational") return builtin_rational(cfg.hbar);
  return make_inline_rational(cfg.inline_spec, cfg.hbar);
}

FamilyOrbit config_orbit(const RunConfig& cfg) {
  return orbit(config_r(cfg), cfg.rho, cfg.orbit_min, cfg.orbit_max);
}

}  // namespace rllf
