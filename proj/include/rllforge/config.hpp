#pragma once
// Run configuration: JSON parsing with pointer-bearing validation errors,
// construction of the configured R-matrix (builtin or inline rational entry
// table) and orbit.

#include <json.hpp>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rllforge/family.hpp"
#include "rllforge/rmatrix.hpp"
#include "rllforge/sampling.hpp"

namespace rllf {

// Rational function with complex coefficients in ascending powers of u.
struct RatFn {
  std::vector<cplx> num{cplx(1.0)};
  std::vector<cplx> den{cplx(1.0)};
};

struct InlineRationalSpec {
  std::map<char, RatFn> entries;  // all of a,b,c,d,s,t
};

struct FixtureOptions {
  bool corrupt_kk3 = false;  // invert the k1-k2 swap ratio
  bool wrong_shift = false;  // double the quarter-shift in E/F currents
  bool naive_xy = false;     // transfer negative control on a nontrivial orbit
};

struct RunConfig {
  // family
  std::string family_builtin = "trig";  // "trig" | "rational" | "inline"
  cplx eta = cplx(1.0 / 3.141592653589793238462643383279502884);
  cplx hbar = cplx(0.3);
  InlineRationalSpec inline_spec;

  // orbit
  RhoSpec rho;
  int orbit_min = -3, orbit_max = 3;
  int pair_i = 0, pair_j = 1;
  int eps = +1;
  std::vector<cplx> ef_charges{cplx(0.0), cplx(1.0)};

  // sampling / tolerances
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool has_samples = false;
  int samples = 100;
  double box_lo = -2.0, box_hi = 2.0;
  double tol = 1e-9;
  double pole_guard = 1e-6;

  // misc
  int chain_max = 3;
  std::string out;
  bool quiet = false;
  FixtureOptions fixtures;

  SampleSpec sample_spec(int count) const {
    SampleSpec s;
    s.seed = seed;
    s.count = count;
    s.lo = box_lo;
    s.hi = box_hi;
    s.pole_guard = pole_guard;
    return s;
  }
};

// Throws ValidationError carrying a JSON pointer on malformed input.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

// Seed priority: CLI flag > config value > environment; throws
// ValidationError at "/seed" when none is present.
void resolve_seed(RunConfig& cfg, std::optional<std::uint64_t> cli_seed,
                  const char* env_value);

// Custom R from an inline rational entry table; pole distance from the
// denominator roots (companion-matrix eigenvalues).
StructuredR make_inline_rational(const InlineRationalSpec& spec, cplx hbar);

StructuredR config_r(const RunConfig& cfg);
FamilyOrbit config_orbit(const RunConfig& cfg);

}  // namespace rllf
